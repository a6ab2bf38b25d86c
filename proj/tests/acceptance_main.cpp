// Acceptance suite: the end-to-end checks that gate a release. Each criterion
// prints one line; the exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "coopdesign/examples.hpp"
#include "coopdesign/reactive.hpp"
#include "coopdesign/simulator.hpp"

using namespace coopdesign;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    if (!pass) ++failures;
}

double ms_elapsed(const std::function<void()>& body) {
    // Warm once, then time the best of three runs.
    body();
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        body();
        const auto stop = std::chrono::steady_clock::now();
        best = std::min(best,
                        std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return best;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer), pattern, a, b, c);
    return buffer;
}

// --------------------------------------------------------------------------
// 1-3: exact worked-example values with runtime budgets.
// --------------------------------------------------------------------------

void criterion_1() {
    const auto env = benchmark_task_environment<Rational>();
    std::optional<Rational> nu;
    const double ms = ms_elapsed([&] { nu = nu_coop(env); });
    const bool pass = nu && *nu == Rational(1) / 3 && ms < 1.0;
    report(1, pass,
           "hybrid weight nu_coop(tG) = " + (nu ? num<Rational>::str(*nu) : "absent") +
               fmt(" (want 1/3 exactly), %.3f ms (budget 1)", ms));
}

void criterion_2() {
    const auto env = benchmark_task_environment<Rational>();
    OptimalReactiveT<Rational> design;
    const double ms = ms_elapsed([&] { design = design_observable(env); });
    const bool values = design.dwell == 1 && design.extra == Rational(5) / 9 &&
                        design.solution.bad_share == Rational(7) / 16;
    report(2, values && ms < 10.0,
           "observable optimum (N_B, x) = (" + std::to_string(design.dwell) + ", " +
               num<Rational>::str(design.extra) + "), bad share " +
               num<Rational>::str(design.solution.bad_share) +
               fmt(" (want (1, 5/9), 7/16), %.3f ms (budget 10)", ms));
}

void criterion_3() {
    const auto env = benchmark_task_environment<Rational>();
    OptimalReactiveT<Rational> design;
    const double ms = ms_elapsed([&] { design = design_unobservable(env); });
    const bool values = design.dwell == 1 && design.extra == Rational(5) / 27 &&
                        design.solution.bad_share == Rational(32) / 59;
    report(3, values && ms < 10.0,
           "unobservable optimum (N_B, x) = (" + std::to_string(design.dwell) + ", " +
               num<Rational>::str(design.extra) + "), bad share " +
               num<Rational>::str(design.solution.bad_share) +
               fmt(" (want (1, 5/27), 32/59), %.3f ms (budget 10)", ms));
}

// --------------------------------------------------------------------------
// 4: value ordering static <= unobservable <= observable, strict when dG != dB.
// --------------------------------------------------------------------------

void criterion_4() {
    const auto env = benchmark_task_environment<double>();
    const double static_value = optimal_static(env).social_value;
    const double unobs = design_unobservable(env).social_value;
    const double obs = design_observable(env).social_value;
    const bool strict_expected = env.temptation_good != env.temptation_bad;
    bool pass = static_value <= unobs + 1e-9 && unobs <= obs + 1e-9;
    if (strict_expected) pass = pass && static_value < unobs - 1e-9 && unobs < obs - 1e-9;
    report(4, pass,
           fmt("value ordering static %.6f < unobservable %.6f < observable %.6f (tol 1e-9)",
               static_value, unobs, obs));
}

// --------------------------------------------------------------------------
// 5: classification equals the feasible-set oracle on a 20 x 20 x 5 grid.
// --------------------------------------------------------------------------

Cooperation classify_oracle(const Environment& env) {
    const Tol<double> tol;
    const double w = continuation_weight(env.discount);
    struct Candidate {
        bool good, bad;
        Cooperation outcome;
    };
    const Candidate candidates[] = {{true, true, Cooperation::Total},
                                    {true, false, Cooperation::OnlyGood},
                                    {false, true, Cooperation::OnlyBad},
                                    {false, false, Cooperation::None}};
    Cooperation best = Cooperation::None;
    double best_stake = -1.0;
    for (const auto& c : candidates) {
        double stake = 0.0;
        if (c.good) stake += env.p_good * env.benefit_good;
        if (c.bad) stake += env.p_bad * env.benefit_bad;
        bool feasible = true;
        if (c.good && !tol.leq(env.temptation_good, w * stake)) feasible = false;
        if (c.bad && !tol.leq(env.temptation_bad, w * stake)) feasible = false;
        if (feasible && stake > best_stake) {
            best_stake = stake;
            best = c.outcome;
        }
    }
    return best;
}

void criterion_5() {
    const double deltas[5] = {0.1, 0.3, 0.5, 0.7, 0.9};
    long cells = 0, matches = 0;
    for (int variant = 0; variant < 2; ++variant) {
        Environment env = benchmark_environment<double>();
        if (variant == 1) {
            env.temptation_good = 0.4;  // reversed ordering dG < dB
            env.temptation_bad = 1.1;
            env.benefit_bad = 1.3;
        }
        for (int i = 1; i <= 20; ++i) {
            for (int j = 1; j <= 20; ++j) {
                for (double delta : deltas) {
                    env.p_good = i / 21.0;
                    env.p_bad = j / 21.0;
                    if (env.p_good + env.p_bad > 1.0) continue;
                    env.discount = delta;
                    ++cells;
                    if (classify(env) == classify_oracle(env)) ++matches;
                }
            }
        }
    }
    report(5, cells > 0 && matches == cells,
           "classification matches the feasible-set oracle in " + std::to_string(matches) + "/" +
               std::to_string(cells) + " grid cells (want 100%)");
}

// --------------------------------------------------------------------------
// 6: optimal reshuffling rate and the good-only interval on a fine r grid.
// --------------------------------------------------------------------------

void criterion_6() {
    Environment env;
    env.discount = 0.6;
    env.p_good = 0.4;
    env.p_bad = 0.4;
    env.benefit_good = 1.0;
    env.benefit_bad = 1.0;
    env.temptation_good = 0.2;
    env.temptation_bad = 1.0;
    env.social_good = 1.0;
    env.social_bad = -0.1;
    const auto design = design_reshuffle(env);
    bool pass = design.feasible_optimal &&
                std::fabs(*design.reshuffle_rate - 4.0 / 9.0) <= 1e-9;
    // Predicted good-only interval: total cooperation survives up to r = 2/27
    // (ties cooperate), good-only holds up to r* = 4/9, nothing after.
    const double lower = 2.0 / 27.0;
    const double upper = 4.0 / 9.0;
    long mismatches = 0;
    for (int i = 0; i <= 1000; ++i) {
        const double r = i / 1000.0;
        const Cooperation outcome = classify_reshuffled(env, r);
        Cooperation expected;
        if (r <= lower)
            expected = Cooperation::Total;
        else if (r <= upper)
            expected = Cooperation::OnlyGood;
        else
            expected = Cooperation::None;
        if (outcome != expected) ++mismatches;
    }
    pass = pass && mismatches == 0;
    report(6, pass,
           fmt("r* = %.12f (want 4/9 within 1e-9); grid mismatches %g of 1001",
               design.feasible_optimal ? *design.reshuffle_rate : -1.0,
               static_cast<double>(mismatches)));
}

// --------------------------------------------------------------------------
// 7: no balanced two-assignment grid candidate beats the static optimum.
// --------------------------------------------------------------------------

void criterion_7() {
    std::vector<TaskEnvironment> envs;
    envs.push_back(benchmark_task_environment<double>());
    TaskEnvironment high_cover = benchmark_task_environment<double>();
    high_cover.cover_good = 0.6;
    high_cover.cover_bad = 0.4;
    envs.push_back(high_cover);
    TaskEnvironment specialized = benchmark_task_environment<double>();
    specialized.temptation_good = 0.5;
    envs.push_back(specialized);
    TaskEnvironment harmful = benchmark_task_environment<double>();
    harmful.social_bad = -10.0;
    envs.push_back(harmful);

    double worst_gap = -1e300;
    for (const auto& env : envs) {
        const double optimum = optimal_static(env).social_value;
        for (const auto& candidate : static_candidate_grid(env, 0.05))
            worst_gap = std::max(worst_gap, candidate.value - optimum);
    }
    report(7, worst_gap <= 1e-9,
           fmt("best grid candidate beats the optimum by %.3g across %g environments "
               "(tolerance 1e-9)",
               worst_gap, static_cast<double>(envs.size())));
}

// --------------------------------------------------------------------------
// 8: exhaustive dwell enumeration finds nothing cheaper than the designs.
// --------------------------------------------------------------------------

void criterion_8() {
    const auto env = benchmark_task_environment<double>();
    bool pass = true;
    std::string detail;
    for (const bool observable : {true, false}) {
        const auto design = design_reactive(env, observable);
        double best_feasible_share = 1e300;
        for (int dwell = 0; dwell <= 5; ++dwell) {
            for (int xi = 0; xi <= 99; ++xi) {
                const double extra = xi / 100.0;
                const auto chain = build_trigger_chain<double>(dwell, extra, observable);
                const auto feasible = full_cooperation_feasible(
                    chain, env.arrive_good, env.arrive_bad, incentives_of(env), env.discount);
                if (!feasible.feasible) continue;
                best_feasible_share = std::min(
                    best_feasible_share,
                    trigger_bad_share(dwell, extra, env.arrive_good, observable));
            }
        }
        if (best_feasible_share < design.solution.bad_share - 1e-12) pass = false;
        detail += std::string(observable ? "observable" : "unobservable") + ": designed " +
                  fmt("%.6f vs best enumerated %.6f; ", design.solution.bad_share,
                      best_feasible_share);
    }
    report(8, pass, detail + "(N_B <= 5, x step 0.01)");
}

// --------------------------------------------------------------------------
// 9: large-scale simulation agreement.
// --------------------------------------------------------------------------

void criterion_9() {
    const auto start = std::chrono::steady_clock::now();
    const auto env = benchmark_task_environment<double>();
    bool pass = true;
    std::string detail;

    for (const bool observable : {true, false}) {
        const auto design = design_reactive(env, observable);
        SimConfig config;
        config.env = env;
        config.policy = ReactiveChainPolicy{design.chain};
        config.teams = 10000;
        config.horizon = 10000;
        config.seed = observable ? 2026 : 2027;
        const SimReport sim = run(config);
        const double expected = observable ? 7.0 / 16.0 : 32.0 / 59.0;
        const double sigma = sim.occupancy_ci / 1.96;
        if (std::fabs(sim.occupancy_bad - expected) > 3.0 * sigma) pass = false;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%s bad share %.6f (want %s); ",
                      observable ? "observable" : "unobservable", sim.occupancy_bad,
                      observable ? "7/16" : "32/59");
        detail += buf;

        for (const auto& gain : sim.gains) {
            if (!gain.prescribed_cooperate) pass = false;
            if (gain.game == "G") {
                // Indifference at the good game: zero within the CI.
                if (std::fabs(gain.mean) > gain.ci_halfwidth + gain.truncation_bound) pass = false;
            } else if (gain.mean > 0.0) {
                pass = false;
            }
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    pass = pass && seconds < 60.0;
    report(9, pass,
           detail + fmt("gains nonpositive with good-game gain in CI of 0; %.1f s (budget 60)",
                        seconds));
}

// --------------------------------------------------------------------------
// 10: period-length sweep limit behavior.
// --------------------------------------------------------------------------

void criterion_10() {
    const auto env = limit_sweep_environment();
    const std::vector<double> periods = {1.0, 0.5, 0.25, 0.125, 0.0625};
    const auto points = period_sweep(env, periods);
    bool pass = points.size() == periods.size();
    double unobs_gap_1 = 0.0, obs_gap_1 = 0.0;
    double final_unobs_ratio = 1.0, min_obs_ratio = 1.0;
    if (pass) {
        for (const auto& point : points)
            if (!point.static_rate || !point.observable_rate || !point.unobservable_rate)
                pass = false;
    }
    if (pass) {
        unobs_gap_1 = *points[0].unobservable_rate - *points[0].static_rate;
        obs_gap_1 = *points[0].observable_rate - *points[0].static_rate;
        pass = unobs_gap_1 > 0.0 && obs_gap_1 > 0.0;
        double previous = unobs_gap_1;
        for (size_t i = 1; i < points.size() && pass; ++i) {
            const double unobs_gap = *points[i].unobservable_rate - *points[i].static_rate;
            const double obs_gap = *points[i].observable_rate - *points[i].static_rate;
            if (unobs_gap >= previous) pass = false;  // monotone decrease
            min_obs_ratio = std::min(min_obs_ratio, obs_gap / obs_gap_1);
            previous = unobs_gap;
        }
        final_unobs_ratio = previous / unobs_gap_1;
        pass = pass && final_unobs_ratio < 0.10 && min_obs_ratio > 0.50;
    }
    report(10, pass,
           fmt("unobservable gap shrinks monotonically to %.1f%% of T=1 (want < 10%%); "
               "observable gap stays above %.1f%% (want > 50%%)",
               100.0 * final_unobs_ratio, 100.0 * min_obs_ratio));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures;
}
