#ifndef COOPDESIGN_RESHUFFLE_HPP
#define COOPDESIGN_RESHUFFLE_HPP

#include <optional>

#include "coopdesign/equilibrium.hpp"

namespace coopdesign {

// Classification under a per-period reshuffle probability. Full reshuffling
// collapses play to one shot, where only the stage equilibrium survives.
template <typename R>
Cooperation classify_reshuffled(const EnvironmentT<R>& env, const R& reshuffle,
                                const Tol<R>& tol = {}) {
    const R d_eff = effective_discount(env.discount, reshuffle);
    if (d_eff == num<R>::from_int(0)) return Cooperation::None;
    return classify(with_discount(env, d_eff), tol);
}

// The three requirements for some reshuffle rate to yield cooperation in the
// good game only.
struct ReshuffleConditions {
    bool temptation_ordered = false;      // dG < dB
    bool good_sustains_alone = false;     // dG <= delta/(1-delta) pG cG
    bool good_frequent_enough = false;    // pG cG / (pB cB) > dG/(dB - dG)
    bool all() const { return temptation_ordered && good_sustains_alone && good_frequent_enough; }
};

template <typename R>
ReshuffleConditions check_conditions(const EnvironmentT<R>& env, const Tol<R>& tol = {}) {
    validate(env);
    ReshuffleConditions c;
    c.temptation_ordered = tol.lt(env.temptation_good, env.temptation_bad);
    c.good_sustains_alone = solo_cooperation_holds(env, true, tol);
    // Division-free form of pG cG/(pB cB) > dG/(dB-dG); defined false unless
    // dB exceeds dG.
    c.good_frequent_enough =
        tol.lt(env.temptation_good, env.temptation_bad) &&
        tol.gt(env.p_good * env.benefit_good * (env.temptation_bad - env.temptation_good),
               env.temptation_good * env.p_bad * env.benefit_bad);
    return c;
}

enum class Fallback { KeepTogetherTotal, ReshuffleNone };

template <typename R>
struct ReshuffleDesignT {
    ReshuffleConditions conditions;
    bool feasible_optimal = false;
    std::optional<R> reshuffle_rate;      // r*, present iff feasible
    std::optional<R> discount_effective;  // (1-r*) delta
    std::optional<Fallback> fallback;     // present iff infeasible
    Cooperation outcome = Cooperation::None;
    R social_value{};
};

using ReshuffleDesign = ReshuffleDesignT<double>;

// Optimal-reshuffling design: when the three conditions hold, r* makes the
// good game's solo condition bind, the largest effective discount that still
// shuts down total cooperation. Otherwise the designer picks the better of
// keeping teams together (total cooperation) and full reshuffling (none);
// ties and harmful totals reshuffle.
template <typename R>
ReshuffleDesignT<R> design_reshuffle(const EnvironmentT<R>& env, const Tol<R>& tol = {}) {
    const R zero = num<R>::from_int(0);
    const R one = num<R>::from_int(1);
    ReshuffleDesignT<R> out;
    out.conditions = check_conditions(env, tol);

    if (out.conditions.all()) {
        // Solve dG = d_eff/(1-d_eff) pG cG for the effective discount.
        const R stake = env.p_good * env.benefit_good;
        const R d_eff = env.temptation_good / (env.temptation_good + stake);
        R rate = one - d_eff / env.discount;
        if (rate < zero) {
            // Condition 2 guarantees d_eff <= delta; only float error can land here.
            if (num<R>::to_double(rate) < -num<R>::to_double(tol.abs_tol))
                throw InternalError("reshuffle rate solved negative despite conditions");
            rate = zero;
        }
        out.feasible_optimal = true;
        out.reshuffle_rate = rate;
        out.discount_effective = effective_discount(env.discount, rate);
        out.outcome = classify_reshuffled(env, rate, tol);
        if (out.outcome != Cooperation::OnlyGood)
            throw InternalError("indifference-point reshuffle did not yield good-only cooperation");
        out.social_value = env.p_good * env.social_good;
        return out;
    }

    const Cooperation kept = classify(env, tol);
    if (kept == Cooperation::OnlyGood)
        throw InternalError("good-only classification with reshuffle conditions failing");
    const R total_value = pattern_value(env, Cooperation::Total);
    if (kept == Cooperation::Total && tol.gt(total_value, zero)) {
        out.fallback = Fallback::KeepTogetherTotal;
        out.outcome = Cooperation::Total;
        out.social_value = total_value;
    } else {
        out.fallback = Fallback::ReshuffleNone;
        out.outcome = Cooperation::None;
        out.social_value = zero;
    }
    return out;
}

}  // namespace coopdesign

#endif  // COOPDESIGN_RESHUFFLE_HPP
