#ifndef COOPDESIGN_STATIC_ASSIGNMENT_HPP
#define COOPDESIGN_STATIC_ASSIGNMENT_HPP

#include <optional>
#include <vector>

#include "coopdesign/reshuffle.hpp"

namespace coopdesign {

// Two-task world: the good task yields only good games at rate aG, the bad
// task only bad games at rate aB. qG/qB are the coverage shares the team
// structure must supply.
template <typename R>
struct TaskEnvironmentT {
    R discount{};
    R arrive_good{}, arrive_bad{};   // aG, aB
    R cover_good{}, cover_bad{};     // qG, qB with qG + qB = 1
    R benefit_good{}, benefit_bad{};
    R temptation_good{}, temptation_bad{};
    R social_good{}, social_bad{};
};

using TaskEnvironment = TaskEnvironmentT<double>;
using TaskEnvironmentQ = TaskEnvironmentT<Rational>;

template <typename R>
void validate(const TaskEnvironmentT<R>& env, const Tol<R>& tol = {}) {
    const R zero = num<R>::from_int(0);
    const R one = num<R>::from_int(1);
    if (!(env.discount > zero && env.discount < one))
        throw ValidationError("discount factor must lie in (0,1)");
    if (!(env.arrive_good > zero && env.arrive_good <= one) ||
        !(env.arrive_bad > zero && env.arrive_bad <= one))
        throw ValidationError("task arrival probabilities must lie in (0,1]");
    if (!(env.cover_good > zero && env.cover_bad > zero) ||
        !tol.eq(env.cover_good + env.cover_bad, one))
        throw ValidationError("coverage shares must be positive and sum to 1");
    if (!(env.benefit_good > zero && env.benefit_bad > zero))
        throw ValidationError("cooperation benefits must be positive");
    if (!(env.temptation_good > zero && env.temptation_bad > zero))
        throw ValidationError("deviation temptations must be positive");
    if (!(env.social_good > zero)) throw ValidationError("VG must be positive");
    if (!(env.social_bad < zero)) throw ValidationError("VB must be negative");
}

// The one-task environment a team faces under an assignment placing weight
// nu on the good task.
template <typename R>
EnvironmentT<R> induced_environment(const TaskEnvironmentT<R>& env, const R& nu) {
    EnvironmentT<R> e;
    e.discount = env.discount;
    e.p_good = nu * env.arrive_good;
    e.p_bad = (num<R>::from_int(1) - nu) * env.arrive_bad;
    e.benefit_good = env.benefit_good;
    e.benefit_bad = env.benefit_bad;
    e.temptation_good = env.temptation_good;
    e.temptation_bad = env.temptation_bad;
    e.social_good = env.social_good;
    e.social_bad = env.social_bad;
    return e;
}

template <typename R>
R max_temptation(const TaskEnvironmentT<R>& env) {
    return env.temptation_good > env.temptation_bad ? env.temptation_good : env.temptation_bad;
}

// Hybrid assignment: the good-task weight at which total cooperation binds,
//   max_g d_g = delta/(1-delta) (nu aG cG + (1-nu) aB cB).
// Absent when no weight in [0,1] solves it.
template <typename R>
std::optional<R> nu_coop(const TaskEnvironmentT<R>& env, const Tol<R>& tol = {}) {
    validate(env, tol);
    const R w = continuation_weight(env.discount);
    const R hi = w * env.arrive_bad * env.benefit_bad;   // stake at nu = 0
    const R lo = w * env.arrive_good * env.benefit_good; // stake at nu = 1
    const R target = max_temptation(env);
    if (tol.eq(hi, lo)) {
        // Constant stake: either every weight binds or none does; prefer the
        // most good-task weight when degenerate.
        if (tol.eq(target, hi)) return num<R>::from_int(1);
        return std::nullopt;
    }
    R nu = (hi - target) / (hi - lo);
    const R zero = num<R>::from_int(0);
    const R one = num<R>::from_int(1);
    if (nu < zero) {
        if (!tol.eq(nu, zero)) return std::nullopt;
        nu = zero;
    }
    if (nu > one) {
        if (!tol.eq(nu, one)) return std::nullopt;
        nu = one;
    }
    return nu;
}

// Full specialization sustains good-only cooperation iff the good task alone
// provides enough continuation value.
template <typename R>
bool full_specialization_check(const TaskEnvironmentT<R>& env, const Tol<R>& tol = {}) {
    validate(env, tol);
    const R w = continuation_weight(env.discount);
    return tol.leq(env.temptation_good, w * env.arrive_good * env.benefit_good);
}

template <typename R>
struct StaticEntryT {
    R nu{};         // weight on the good task
    R mass{};       // population share of teams with this assignment
    R reshuffle{};  // 0 or 1 in optimal structures
    Cooperation outcome = Cooperation::None;
};

enum class StaticRegime { Specialization, Hybrid, NoCooperation };

template <typename R>
struct StaticStructureT {
    std::vector<StaticEntryT<R>> entries;
    R social_value{};
    StaticRegime regime = StaticRegime::NoCooperation;
    std::optional<R> hybrid_nu;            // nu_coop when it exists
    bool good_needs_mixing = false;        // dG > delta/(1-delta) aG cG
    bool bad_task_sustains = false;        // max_g d_g < delta/(1-delta) aB cB
};

using StaticStructure = StaticStructureT<double>;

template <typename R>
StaticEntryT<R> make_static_entry(const TaskEnvironmentT<R>& env, const R& nu, const R& mass,
                                  const R& reshuffle, const Tol<R>& tol) {
    StaticEntryT<R> e;
    e.nu = nu;
    e.mass = mass;
    e.reshuffle = reshuffle;
    e.outcome = classify_reshuffled(induced_environment(env, nu), reshuffle, tol);
    return e;
}

// Per-period flow value of one entry under its predicted outcome, scaled by mass.
template <typename R>
R entry_value(const TaskEnvironmentT<R>& env, const StaticEntryT<R>& e) {
    return e.mass * pattern_value(induced_environment(env, e.nu), e.outcome);
}

// Optimal static team structure. Three regimes:
//  - specialization when the good task sustains cooperation alone,
//  - the hybrid two-assignment structure when mixing is required and the bad
//    task can carry total cooperation (masses pinned by the coverage shares),
//  - no cooperation otherwise, or when the hybrid's value is negative.
template <typename R>
StaticStructureT<R> optimal_static(const TaskEnvironmentT<R>& env, const Tol<R>& tol = {}) {
    validate(env, tol);
    const R zero = num<R>::from_int(0);
    const R one = num<R>::from_int(1);
    const R w = continuation_weight(env.discount);

    StaticStructureT<R> out;
    out.good_needs_mixing = tol.gt(env.temptation_good, w * env.arrive_good * env.benefit_good);
    out.bad_task_sustains = tol.lt(max_temptation(env), w * env.arrive_bad * env.benefit_bad);
    out.hybrid_nu = nu_coop(env, tol);

    auto no_cooperation = [&]() {
        out.entries = {make_static_entry(env, one, env.cover_good, one, tol),
                       make_static_entry(env, zero, env.cover_bad, one, tol)};
        out.social_value = zero;
        out.regime = StaticRegime::NoCooperation;
        return out;
    };

    if (!out.good_needs_mixing) {
        // Observation-1 regime: keep good-task specialists together, reshuffle
        // bad-task specialists every period.
        out.entries = {make_static_entry(env, one, env.cover_good, zero, tol),
                       make_static_entry(env, zero, env.cover_bad, one, tol)};
        out.social_value = entry_value(env, out.entries[0]);
        out.regime = StaticRegime::Specialization;
        return out;
    }
    if (!out.bad_task_sustains || !out.hybrid_nu) return no_cooperation();

    const R nu = *out.hybrid_nu;
    StaticEntryT<R> coop;
    StaticEntryT<R> specialist;
    bool has_specialist = true;
    if (tol.leq(env.cover_good, nu)) {
        // Hybrid teams can absorb all good-task coverage; specialists take
        // the remaining bad coverage.
        const R coop_mass = env.cover_good / nu;
        coop = make_static_entry(env, nu, coop_mass, zero, tol);
        has_specialist = tol.lt(coop_mass, one);
        if (has_specialist)
            specialist = make_static_entry(env, zero, one - coop_mass, one, tol);
    } else {
        const R coop_mass = env.cover_bad / (one - nu);
        coop = make_static_entry(env, nu, coop_mass, zero, tol);
        has_specialist = tol.lt(coop_mass, one);
        if (has_specialist) specialist = make_static_entry(env, one, one - coop_mass, one, tol);
    }
    if (coop.outcome != Cooperation::Total)
        throw InternalError("hybrid assignment did not classify as total cooperation");

    const R hybrid_value = entry_value(env, coop);
    if (tol.lt(hybrid_value, zero)) return no_cooperation();

    out.entries = {coop};
    if (has_specialist) out.entries.push_back(specialist);
    out.social_value = hybrid_value;
    out.regime = StaticRegime::Hybrid;
    return out;
}

// Coverage of the good task supplied by a structure; equals qG when balanced.
template <typename R>
R good_coverage(const StaticStructureT<R>& s) {
    R total = num<R>::from_int(0);
    for (const auto& e : s.entries) total += e.mass * e.nu;
    return total;
}

// ---------------------------------------------------------------------------
// Candidate grid for audit: every one- or two-assignment structure with
// weights from a nu grid, reshuffle in {0,1}, and masses solved from the
// coverage constraint.
// ---------------------------------------------------------------------------

struct GridCandidate {
    double nu_a = 0, r_a = 0, mass_a = 0;
    bool has_b = false;
    double nu_b = 0, r_b = 0, mass_b = 0;
    double value = 0;
};

std::vector<GridCandidate> static_candidate_grid(const TaskEnvironment& env, double nu_step,
                                                 double tol = global_tolerance());

}  // namespace coopdesign

#endif  // COOPDESIGN_STATIC_ASSIGNMENT_HPP
