#include "coopdesign/equilibrium.hpp"

#include <algorithm>

#include "coopdesign/stage_game.hpp"

namespace coopdesign {

const char* to_string(Cooperation c) {
    switch (c) {
        case Cooperation::Total: return "Total";
        case Cooperation::OnlyGood: return "OnlyGood";
        case Cooperation::OnlyBad: return "OnlyBad";
        case Cooperation::None: return "None";
    }
    return "None";
}

Cooperation classify_plane_point(double x, double y, const GamePrimitives& good,
                                 const GamePrimitives& bad, double tol_value) {
    Tol<double> tol(tol_value);
    const double maxd = std::max(good.temptation, bad.temptation);
    if (tol.leq(maxd, x * bad.coop_benefit + y * good.coop_benefit)) return Cooperation::Total;
    const bool solo_good = tol.leq(good.temptation, y * good.coop_benefit);
    const bool solo_bad = tol.leq(bad.temptation, x * bad.coop_benefit);
    if (solo_good) return Cooperation::OnlyGood;
    if (solo_bad) return Cooperation::OnlyBad;
    return Cooperation::None;
}

RegionGeometry region_boundaries(const GamePrimitives& good, const GamePrimitives& bad,
                                 double tol_value) {
    Tol<double> tol(tol_value);
    RegionGeometry geo;
    const double maxd = std::max(good.temptation, bad.temptation);
    geo.x_intercept = maxd / bad.coop_benefit;
    geo.y_intercept = maxd / good.coop_benefit;
    geo.total_boundary = {0.0, geo.y_intercept, geo.x_intercept, 0.0, "total-cooperation boundary"};

    auto below_line_y = [&](double x, double scale) {
        return scale * geo.y_intercept * (1.0 - x / geo.x_intercept);
    };

    if (tol.gt(good.temptation, bad.temptation)) {
        // Bad-game-only region to the right of x = dB/cB, under the line.
        const double xp = bad.temptation / bad.coop_benefit;
        geo.partial_boundary = Segment{xp, 0.0, xp, (maxd - bad.temptation) / good.coop_benefit,
                                       "bad-only boundary"};
        const double x1 = 0.5 * xp;
        const double x3 = 0.5 * (xp + geo.x_intercept);
        geo.regions = {
            {1, Cooperation::None, x1, below_line_y(x1, 0.25)},
            {2, Cooperation::Total, 0.75 * geo.x_intercept, 0.75 * geo.y_intercept},
            {3, Cooperation::OnlyBad, x3, below_line_y(x3, 0.25)},
        };
    } else if (tol.lt(good.temptation, bad.temptation)) {
        // Good-game-only region above y = dG/cG, left of the line.
        const double yp = good.temptation / good.coop_benefit;
        geo.partial_boundary = Segment{0.0, yp, (maxd - good.temptation) / bad.coop_benefit, yp,
                                       "good-only boundary"};
        auto left_of_line_x = [&](double y, double scale) {
            return scale * geo.x_intercept * (1.0 - y / geo.y_intercept);
        };
        const double y1 = 0.5 * yp;
        const double y4 = 0.5 * (yp + geo.y_intercept);
        geo.regions = {
            {1, Cooperation::None, left_of_line_x(y1, 0.25), y1},
            {2, Cooperation::Total, 0.75 * geo.x_intercept, 0.75 * geo.y_intercept},
            {4, Cooperation::OnlyGood, left_of_line_x(y4, 0.25), y4},
        };
    } else {
        // dG == dB: the partial boundary collapses onto the line's endpoint.
        geo.regions = {
            {1, Cooperation::None, 0.25 * geo.x_intercept, 0.25 * geo.y_intercept},
            {2, Cooperation::Total, 0.75 * geo.x_intercept, 0.75 * geo.y_intercept},
        };
    }
    return geo;
}

Thresholds compstat_thresholds(const Environment& env, double tol_value) {
    validate(env);
    Tol<double> tol(tol_value);
    Thresholds th;
    const double w = continuation_weight(env.discount);
    const double stake_good = env.p_good * env.benefit_good;
    const double stake_bad = env.p_bad * env.benefit_bad;

    th.whistleblower_temptation_bad = w * (stake_good + stake_bad);
    th.max_temptation_good = env.temptation_bad * stake_good / (stake_good + stake_bad);

    if (tol.lt(env.temptation_good, env.temptation_bad) && env.p_good > 0.0) {
        // Condition 2 needs cG >= dG/(w pG); condition 3 needs
        // cG > pB cB dG / (pG (dB - dG)), strictly.
        const double sustain_bound = env.temptation_good / (w * env.p_good);
        const double relative_bound = env.p_bad * env.benefit_bad * env.temptation_good /
                                      (env.p_good * (env.temptation_bad - env.temptation_good));
        th.min_benefit_good = std::max(sustain_bound, relative_bound);
        th.min_benefit_good_attained = tol.gt(sustain_bound, relative_bound);
    }
    return th;
}

double bonus_tradeoff(const Environment& env, double cg_prime) {
    return env.p_bad * env.social_bad + env.p_good * (cg_prime - env.benefit_good);
}

}  // namespace coopdesign
