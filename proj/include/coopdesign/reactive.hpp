#ifndef COOPDESIGN_REACTIVE_HPP
#define COOPDESIGN_REACTIVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "coopdesign/chain.hpp"
#include "coopdesign/static_assignment.hpp"

namespace coopdesign {

template <typename R>
ChainIncentives<R> incentives_of(const TaskEnvironmentT<R>& env) {
    return ChainIncentives<R>{env.benefit_good,    env.benefit_bad, env.temptation_good,
                              env.temptation_bad,  env.social_good, env.social_bad};
}

// The trigger-dwell chain family of the optimal reactive designs: stay on the
// good task, and on the trigger event (an observed good game, or merely having
// worked the good task when good games are unobservable) move to the bad task
// for `dwell` periods plus one extra period with probability `extra`.
template <typename R>
ChainT<R> build_trigger_chain(int dwell, const R& extra, bool observable) {
    const R zero = num<R>::from_int(0);
    const R one = num<R>::from_int(1);
    if (dwell < 0) throw ValidationError("bad-task dwell must be nonnegative");
    if (extra < zero || extra >= one) throw ValidationError("extra-period probability must lie in [0,1)");

    ChainT<R> chain;
    chain.observe_good = observable;
    const bool has_extra = extra > zero;
    chain.states.push_back({Task::Good, "good"});
    for (int k = 1; k <= dwell; ++k)
        chain.states.push_back({Task::Bad, "bad-" + std::to_string(k)});
    if (has_extra) chain.states.push_back({Task::Bad, "bad-extra"});
    const int n = chain.size();
    const int extra_index = has_extra ? n - 1 : -1;
    chain.memory = dwell + (has_extra ? 1 : 0) + 1;

    auto point = [&](int t) {
        std::vector<R> row(static_cast<size_t>(n), zero);
        row[static_cast<size_t>(t)] = one;
        return row;
    };
    // Leaving the certain dwell: one more bad period with probability extra.
    auto exit_row = [&]() {
        std::vector<R> row(static_cast<size_t>(n), zero);
        if (has_extra) {
            row[static_cast<size_t>(extra_index)] = extra;
            row[0] = one - extra;
        } else {
            row[0] = one;
        }
        return row;
    };
    const std::vector<R> after_trigger = dwell >= 1 ? point(1) : exit_row();

    chain.kernel.resize(static_cast<size_t>(n));
    if (observable) {
        chain.kernel[0] = {after_trigger, point(0), point(0)};
    } else {
        chain.kernel[0] = {after_trigger, after_trigger, after_trigger};
    }
    for (int k = 1; k <= dwell; ++k) {
        const auto row = (k < dwell) ? point(k + 1) : exit_row();
        chain.kernel[static_cast<size_t>(k)] = {row, row, row};
    }
    if (has_extra) {
        chain.kernel[static_cast<size_t>(extra_index)] = {point(0), point(0), point(0)};
    }
    return chain;
}

// Steady-state bad-task time shares of the trigger chains in closed form;
// cross-checked against steady_state in the tests.
template <typename R>
R trigger_bad_share(int dwell, const R& extra, const R& arrive_good, bool observable) {
    const R stay = observable ? num<R>::from_int(1) / arrive_good : num<R>::from_int(1);
    const R bad_time = num<R>::from_int(dwell) + extra;
    return bad_time / (stay + bad_time);
}

template <typename R>
struct ReactivePremises {
    bool good_needs_mixing = false;   // dG > delta/(1-delta) aG cG
    bool bad_task_sustains = false;   // max_g d_g < delta/(1-delta) aB cB
    bool bad_game_easy = false;       // dB < delta/(1-delta) aG cG
    bool all() const { return good_needs_mixing && bad_task_sustains && bad_game_easy; }
};

template <typename R>
ReactivePremises<R> reactive_premises(const TaskEnvironmentT<R>& env, const Tol<R>& tol = {}) {
    const R w = continuation_weight(env.discount);
    ReactivePremises<R> p;
    p.good_needs_mixing = tol.gt(env.temptation_good, w * env.arrive_good * env.benefit_good);
    p.bad_task_sustains = tol.lt(max_temptation(env), w * env.arrive_bad * env.benefit_bad);
    p.bad_game_easy = tol.lt(env.temptation_bad, w * env.arrive_good * env.benefit_good);
    return p;
}

template <typename R>
struct OptimalReactiveT {
    bool observable = false;
    int dwell = 0;                     // N_B
    R extra{};                         // x
    ChainT<R> chain;
    ChainSolutionT<R> solution;
    R cooperating_mass{};              // population share on the chain
    std::optional<Task> specialist_task;  // constant, reshuffled assignment
    R specialist_mass{};
    bool all_noncooperative = false;
    R social_value{};
};

using OptimalReactive = OptimalReactiveT<double>;

namespace detail {

// Value of the good-task state when the good-game slack binds to zero. The
// one-period deviation at a good game must cost exactly dG of continuation
// value, which pins the good-state recursion independently of the dwell.
template <typename R>
R pinned_good_state_value(const TaskEnvironmentT<R>& env, bool observable) {
    const R one = num<R>::from_int(1);
    const R stake = env.arrive_good * env.benefit_good;
    if (observable)
        return env.arrive_good * (env.benefit_good + env.temptation_good) /
               (one - env.discount * (one - env.arrive_good));
    return stake + env.temptation_good;
}

}  // namespace detail

// Minimal (N_B, x) making players exactly indifferent at the good game:
// integer scan over the dwell with an exact linear solve for the extra-period
// probability at each step.
template <typename R>
std::pair<int, R> solve_trigger_dwell(const TaskEnvironmentT<R>& env, bool observable,
                                      const Tol<R>& tol = {}) {
    const R zero = num<R>::from_int(0);
    const R one = num<R>::from_int(1);
    const R bad_stake = env.arrive_bad * env.benefit_bad;
    const R good_value = detail::pinned_good_state_value(env, observable);
    const R target = env.temptation_good / env.discount;  // continuation worth dG/delta
    const R coefficient = bad_stake - (one - env.discount) * good_value;
    if (!(coefficient > zero))
        throw InternalError("good-game slack is not increasing in the extra bad period");

    R dwell_value = zero;     // discounted benefit of the certain dwell prefix
    R discount_power = one;   // delta^N
    constexpr int kMaxDwell = 1000000;
    for (int n = 0; n < kMaxDwell; ++n) {
        const R extra = (target - dwell_value - discount_power * good_value) /
                        (discount_power * coefficient);
        if (extra < one) {
            if (extra < zero) {
                if (!tol.geq(extra, zero))
                    throw InternalError("trigger-dwell solve produced a negative probability");
                return {n, zero};
            }
            return {n, extra};
        }
        dwell_value += discount_power * bad_stake;
        discount_power *= env.discount;
    }
    throw InternalError("trigger-dwell scan failed to terminate");
}

// Designer-optimal reactive team structure for the observable / unobservable
// regimes. Throws PremiseError outside the characterized parameter region.
template <typename R>
OptimalReactiveT<R> design_reactive(const TaskEnvironmentT<R>& env, bool observable,
                                    const Tol<R>& tol = {}) {
    validate(env, tol);
    const R zero = num<R>::from_int(0);
    const R one = num<R>::from_int(1);
    const auto premises = reactive_premises(env, tol);
    if (!premises.good_needs_mixing)
        throw PremiseError(
            "dG <= delta/(1-delta) aG cG: full specialization already sustains good cooperation");
    if (!premises.bad_task_sustains)
        throw PremiseError("max_g d_g >= delta/(1-delta) aB cB: the bad task cannot carry "
                           "total cooperation");
    if (!premises.bad_game_easy)
        throw PremiseError("dB >= delta/(1-delta) aG cG: bad-game incentives are not slack; "
                           "this regime is not characterized");

    OptimalReactiveT<R> out;
    out.observable = observable;
    const auto [dwell, extra] = solve_trigger_dwell(env, observable, tol);
    out.dwell = dwell;
    out.extra = extra;
    out.chain = build_trigger_chain(dwell, extra, observable);
    out.solution = solve_values(out.chain, env.arrive_good, env.arrive_bad, incentives_of(env),
                                env.discount, tol);

    // The good-game slack must bind; bad-game slacks must be clean.
    for (int s = 0; s < out.chain.size(); ++s) {
        const R slack = out.solution.slacks[static_cast<size_t>(s)];
        if (out.chain.states[static_cast<size_t>(s)].task == Task::Good) {
            const bool binds = num<R>::exact ? slack == zero
                                             : num<R>::to_double(num<R>::abs(slack)) <= 1e-9;
            if (!binds) throw InternalError("good-game slack does not bind at the designed chain");
        } else if (!tol.geq(slack, zero)) {
            throw InternalError("bad-game slack negative at the designed chain");
        }
    }

    const R good_share = out.solution.good_share;
    if (!tol.gt(out.solution.social_value, zero)) {
        out.all_noncooperative = true;
        out.cooperating_mass = zero;
        out.specialist_mass = zero;
        out.social_value = zero;
        return out;
    }
    if (tol.eq(good_share, env.cover_good)) {
        out.cooperating_mass = one;
        out.specialist_mass = zero;
    } else if (good_share > env.cover_good) {
        out.cooperating_mass = env.cover_good / good_share;
        out.specialist_task = Task::Bad;
        out.specialist_mass = one - out.cooperating_mass;
    } else {
        out.cooperating_mass = env.cover_bad / out.solution.bad_share;
        out.specialist_task = Task::Good;
        out.specialist_mass = one - out.cooperating_mass;
    }
    out.social_value = out.cooperating_mass * out.solution.social_value;
    return out;
}

template <typename R>
OptimalReactiveT<R> design_observable(const TaskEnvironmentT<R>& env, const Tol<R>& tol = {}) {
    return design_reactive(env, true, tol);
}

template <typename R>
OptimalReactiveT<R> design_unobservable(const TaskEnvironmentT<R>& env, const Tol<R>& tol = {}) {
    return design_reactive(env, false, tol);
}

// Reactive assignments strictly beat the optimal static structure exactly
// when the two temptations differ (given the hybrid static regime).
template <typename R>
bool strict_improvement_check(const TaskEnvironmentT<R>& env, const Tol<R>& tol = {}) {
    const auto premises = reactive_premises(env, tol);
    if (!premises.good_needs_mixing || !premises.bad_task_sustains)
        throw PremiseError("strict-improvement test needs the partial-specialization regime");
    const auto static_structure = optimal_static(env, tol);
    if (static_structure.regime != StaticRegime::Hybrid)
        throw PremiseError("strict-improvement test needs the hybrid static optimum");
    return !tol.eq(env.temptation_good, env.temptation_bad);
}

// ---------------------------------------------------------------------------
// Period-length sweep: rerun the three designers with periods of length T,
// discounting delta^T and arrival probabilities a*T. Values are reported per
// unit of time so different period lengths are comparable.
// ---------------------------------------------------------------------------

struct PeriodPoint {
    double period_length = 1.0;
    std::optional<double> static_rate;
    std::optional<double> observable_rate;
    std::optional<double> unobservable_rate;
    std::optional<double> observable_bad_share;
    std::optional<double> unobservable_bad_share;
    std::string note;  // premise failures, per entry
};

TaskEnvironment scale_period(const TaskEnvironment& env, double period_length);
std::vector<PeriodPoint> period_sweep(const TaskEnvironment& env,
                                      const std::vector<double>& period_lengths,
                                      double tol = global_tolerance());

}  // namespace coopdesign

#endif  // COOPDESIGN_REACTIVE_HPP
