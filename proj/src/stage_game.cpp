#include "coopdesign/stage_game.hpp"

#include <algorithm>

#include "coopdesign/errors.hpp"

namespace coopdesign {

double StageGame::aggregate_payoff(int m) const {
    double total = 0.0;
    if (m > 0) total += m * payoff(Action::Cooperate, m - 1);
    if (m < n) total += (n - m) * payoff(Action::Defect, m);
    return total;
}

void validate_shape(const StageGame& g) {
    if (g.n < 2) throw ValidationError("stage game needs at least 2 players");
    if (static_cast<int>(g.coop_payoff.size()) != g.n ||
        static_cast<int>(g.defect_payoff.size()) != g.n) {
        throw ValidationError("payoff table must have one entry per count of cooperating others");
    }
}

namespace {

// First m players cooperate, the rest defect.
std::vector<Action> profile_with(int n, int cooperators) {
    std::vector<Action> p(static_cast<size_t>(n), Action::Defect);
    for (int i = 0; i < cooperators; ++i) p[static_cast<size_t>(i)] = Action::Cooperate;
    return p;
}

// A profile in which the first player takes `own` and k of the others cooperate.
std::vector<Action> profile_around(int n, Action own, int k) {
    std::vector<Action> p(static_cast<size_t>(n), Action::Defect);
    p[0] = own;
    for (int i = 1; i <= k; ++i) p[static_cast<size_t>(i)] = Action::Cooperate;
    return p;
}

}  // namespace

PropertyReport check_properties(const StageGame& g, double tol_value) {
    validate_shape(g);
    Tol<double> tol(tol_value);
    PropertyReport report;
    for (int i = 0; i < 6; ++i) report.checks[static_cast<size_t>(i)].id = i + 1;

    // Property 1: payoffs depend on own action and the count of cooperating
    // others only. The representation enforces this.
    report.checks[0].passed = true;
    report.checks[0].detail = "symmetric by representation";

    // Property 2: aggregate payoffs uniquely maximized by full cooperation.
    {
        auto& check = report.checks[1];
        check.passed = true;
        const double best = g.aggregate_payoff(g.n);
        for (int m = 0; m < g.n; ++m) {
            if (!tol.gt(best, g.aggregate_payoff(m))) {
                check.passed = false;
                check.detail = "aggregate payoff at full cooperation does not strictly exceed " +
                               std::to_string(m) + " cooperators";
                check.witness = profile_with(g.n, m);
                break;
            }
        }
        if (check.passed) check.detail = "full cooperation uniquely maximizes aggregate payoff";
    }

    // Property 3: not cooperating strictly dominates.
    {
        auto& check = report.checks[2];
        check.passed = true;
        for (int k = 0; k < g.n; ++k) {
            if (!tol.gt(g.payoff(Action::Defect, k), g.payoff(Action::Cooperate, k))) {
                check.passed = false;
                check.detail = "defection not strictly better against " + std::to_string(k) +
                               " cooperating others";
                check.witness = profile_around(g.n, Action::Cooperate, k);
                break;
            }
        }
        if (check.passed) check.detail = "defection strictly dominant";
    }

    // Property 4: full defection by others minimizes a player's best payoff.
    {
        auto& check = report.checks[3];
        check.passed = true;
        const double floor = std::max(g.payoff(Action::Cooperate, 0), g.payoff(Action::Defect, 0));
        for (int k = 0; k < g.n; ++k) {
            const double best_reply =
                std::max(g.payoff(Action::Cooperate, k), g.payoff(Action::Defect, k));
            if (!tol.leq(floor, best_reply)) {
                check.passed = false;
                check.detail = "best reply against 0 cooperators exceeds best reply against " +
                               std::to_string(k);
                check.witness = profile_around(g.n, Action::Defect, k);
                break;
            }
        }
        if (check.passed) check.detail = "full defection by others minmaxes";
    }

    // Property 5: full defection is the unique aggregate-payoff maximizer
    // among profiles other than full cooperation.
    {
        auto& check = report.checks[4];
        check.passed = true;
        const double base = g.aggregate_payoff(0);
        for (int m = 1; m < g.n; ++m) {
            if (!tol.gt(base, g.aggregate_payoff(m))) {
                check.passed = false;
                check.detail = "aggregate payoff with " + std::to_string(m) +
                               " cooperators ties or beats full defection";
                check.witness = profile_with(g.n, m);
                break;
            }
        }
        if (check.passed) check.detail = "full defection best among non-cooperative profiles";
    }

    // Property 6: the gain from defecting is smallest against full cooperation.
    {
        auto& check = report.checks[5];
        check.passed = true;
        const double gain_vs_coop =
            g.payoff(Action::Defect, g.n - 1) - g.payoff(Action::Cooperate, g.n - 1);
        for (int k = 0; k < g.n; ++k) {
            const double gain = g.payoff(Action::Defect, k) - g.payoff(Action::Cooperate, k);
            if (!tol.leq(gain_vs_coop, gain)) {
                check.passed = false;
                check.detail = "defection gain against " + std::to_string(k) +
                               " cooperating others is below the gain against full cooperation";
                check.witness = profile_around(g.n, Action::Defect, k);
                break;
            }
        }
        if (check.passed) check.detail = "defection gain minimized against full cooperation";
    }

    return report;
}

namespace detail {

GamePrimitives extract_primitives(const StageGame& g) {
    GamePrimitives p;
    p.coop_benefit = g.payoff(Action::Cooperate, g.n - 1) - g.payoff(Action::Defect, 0);
    p.temptation = g.payoff(Action::Defect, g.n - 1) - g.payoff(Action::Cooperate, g.n - 1);
    return p;
}

}  // namespace detail

GamePrimitives primitives(const StageGame& g, double tol_value) {
    const PropertyReport report = check_properties(g, tol_value);
    if (!report.all_passed()) {
        for (const auto& c : report.checks) {
            if (!c.passed)
                throw ValidationError("stage game fails property " + std::to_string(c.id) + ": " +
                                      c.detail);
        }
    }
    const GamePrimitives p = detail::extract_primitives(g);
    Tol<double> tol(tol_value);
    if (!tol.gt(p.coop_benefit, 0.0) || !tol.gt(p.temptation, 0.0))
        throw ValidationError("stage game primitives must be strictly positive");
    return p;
}

StageGame make_pd(double c, double d, double a, GameLabel label) {
    if (!(c > 0.0) || !(d > 0.0)) throw ValidationError("make_pd requires c > 0 and d > 0");
    StageGame g;
    g.n = 2;
    g.label = label;
    g.coop_payoff = {-a, c};
    g.defect_payoff = {0.0, c + d};
    return g;
}

}  // namespace coopdesign
