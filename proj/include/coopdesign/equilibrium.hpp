#ifndef COOPDESIGN_EQUILIBRIUM_HPP
#define COOPDESIGN_EQUILIBRIUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "coopdesign/errors.hpp"
#include "coopdesign/numeric.hpp"

namespace coopdesign {

// One-task world: both games arrive on the same assignment with fixed
// per-period probabilities.
template <typename R>
struct EnvironmentT {
    R discount{};                       // delta
    R p_good{}, p_bad{};                // per-period arrival probabilities
    R benefit_good{}, benefit_bad{};    // c_g
    R temptation_good{}, temptation_bad{};  // d_g
    R social_good{}, social_bad{};      // V_G > 0, V_B < 0

    R benefit(bool good) const { return good ? benefit_good : benefit_bad; }
    R temptation(bool good) const { return good ? temptation_good : temptation_bad; }
};

using Environment = EnvironmentT<double>;
using EnvironmentQ = EnvironmentT<Rational>;

enum class Cooperation { Total, OnlyGood, OnlyBad, None };

const char* to_string(Cooperation c);

template <typename R>
void validate(const EnvironmentT<R>& env) {
    const R zero = num<R>::from_int(0);
    const R one = num<R>::from_int(1);
    if (!(env.discount > zero && env.discount < one))
        throw ValidationError("discount factor must lie in (0,1)");
    // Zero arrival probabilities are tolerated so single-game environments can
    // be expressed; the classification handles them as games that never occur.
    if (env.p_good < zero || env.p_bad < zero || env.p_good + env.p_bad > one)
        throw ValidationError("arrival probabilities must be nonnegative with pG + pB <= 1");
    if (!(env.benefit_good > zero && env.benefit_bad > zero))
        throw ValidationError("cooperation benefits must be positive");
    if (!(env.temptation_good > zero && env.temptation_bad > zero))
        throw ValidationError("deviation temptations must be positive");
    if (!(env.social_good > zero)) throw ValidationError("VG must be positive");
    if (!(env.social_bad < zero)) throw ValidationError("VB must be negative");
}

// delta / (1 - delta), the weight on the per-period continuation flow.
template <typename R>
R continuation_weight(const R& discount) {
    return discount / (num<R>::from_int(1) - discount);
}

// Total-cooperation condition: max_g d_g <= delta/(1-delta) * sum_g p_g c_g.
template <typename R>
bool total_cooperation_holds(const EnvironmentT<R>& env, const Tol<R>& tol = {}) {
    const R w = continuation_weight(env.discount);
    const R lhs =
        env.temptation_good > env.temptation_bad ? env.temptation_good : env.temptation_bad;
    return tol.leq(lhs, w * (env.p_good * env.benefit_good + env.p_bad * env.benefit_bad));
}

// Solo condition for one game: d_g <= delta/(1-delta) * p_g c_g.
template <typename R>
bool solo_cooperation_holds(const EnvironmentT<R>& env, bool good, const Tol<R>& tol = {}) {
    const R w = continuation_weight(env.discount);
    const R p = good ? env.p_good : env.p_bad;
    return tol.leq(env.temptation(good), w * p * env.benefit(good));
}

// Player-optimal equilibrium cooperation pattern. Ties cooperate: the weak
// inequalities decide toward the larger cooperation set. A game that never
// arrives carries no cooperation label.
template <typename R>
Cooperation classify(const EnvironmentT<R>& env, const Tol<R>& tol = {}) {
    validate(env);
    const R zero = num<R>::from_int(0);
    if (total_cooperation_holds(env, tol)) {
        if (env.p_bad == zero) return env.p_good == zero ? Cooperation::None : Cooperation::OnlyGood;
        if (env.p_good == zero) return Cooperation::OnlyBad;
        return Cooperation::Total;
    }
    const bool good = solo_cooperation_holds(env, true, tol);
    const bool bad = solo_cooperation_holds(env, false, tol);
    // Both solo conditions holding would imply the total condition held.
    if (good && bad) throw InternalError("solo conditions held for both games without total");
    if (good) return Cooperation::OnlyGood;
    if (bad) return Cooperation::OnlyBad;
    return Cooperation::None;
}

// Per-period flow value of a cooperation pattern to the designer.
template <typename R>
R pattern_value(const EnvironmentT<R>& env, Cooperation c) {
    const R zero = num<R>::from_int(0);
    switch (c) {
        case Cooperation::Total:
            return env.p_good * env.social_good + env.p_bad * env.social_bad;
        case Cooperation::OnlyGood:
            return env.p_good * env.social_good;
        case Cooperation::OnlyBad:
            return env.p_bad * env.social_bad;
        case Cooperation::None:
            return zero;
    }
    return zero;
}

// Reshuffling a team with probability r each period discounts continuation
// play by (1-r) delta.
template <typename R>
R effective_discount(const R& discount, const R& reshuffle) {
    const R zero = num<R>::from_int(0);
    const R one = num<R>::from_int(1);
    if (!(discount > zero && discount < one))
        throw ValidationError("discount factor must lie in (0,1)");
    if (reshuffle < zero || reshuffle > one)
        throw ValidationError("reshuffle probability must lie in [0,1]");
    return (one - reshuffle) * discount;
}

template <typename R>
EnvironmentT<R> with_discount(EnvironmentT<R> env, const R& discount) {
    env.discount = discount;
    return env;
}

// ---------------------------------------------------------------------------
// Region geometry for the cooperation phase diagram in the plane
// (x, y) = (delta/(1-delta) pB, delta/(1-delta) pG).
// ---------------------------------------------------------------------------

struct Segment {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    std::string name;
};

struct RegionLabel {
    int id = 0;           // 1 none, 2 total, 3 bad-only, 4 good-only
    Cooperation outcome = Cooperation::None;
    double x = 0, y = 0;  // representative interior point
};

struct RegionGeometry {
    // Total-cooperation boundary: x*cB + y*cG = max_g d_g.
    Segment total_boundary;
    // Partial-cooperation boundary; degenerate (zero length) when dG == dB.
    std::optional<Segment> partial_boundary;
    std::vector<RegionLabel> regions;
    double x_intercept = 0;  // max d / cB
    double y_intercept = 0;  // max d / cG
};

struct GamePrimitives;
RegionGeometry region_boundaries(const GamePrimitives& good, const GamePrimitives& bad,
                                 double tol = global_tolerance());

// Classify a point of the phase plane directly (used to cross-check geometry).
Cooperation classify_plane_point(double x, double y, const GamePrimitives& good,
                                 const GamePrimitives& bad, double tol = global_tolerance());

// ---------------------------------------------------------------------------
// Comparative-statics thresholds on payoff changes.
// ---------------------------------------------------------------------------

struct Thresholds {
    // Smallest cG' for which optimal-cooperation conditions 2 and 3 hold;
    // absent when dG >= dB (no payoff level helps then). `attained` is false
    // when the binding condition is strict so the bound is an infimum.
    std::optional<double> min_benefit_good;
    bool min_benefit_good_attained = false;
    // Largest dG compatible with the relative-likelihood condition.
    double max_temptation_good = 0;
    // dB beyond which total cooperation is impossible at any reshuffle rate.
    double whistleblower_temptation_bad = 0;
};

Thresholds compstat_thresholds(const Environment& env, double tol = global_tolerance());

// Net per-period flow change of buying optimal cooperation with a bonus that
// raises cG to cg_prime: pB*VB + pG*(cg_prime - cG), VB < 0 in our convention.
double bonus_tradeoff(const Environment& env, double cg_prime);

}  // namespace coopdesign

#endif  // COOPDESIGN_EQUILIBRIUM_HPP
