#ifndef COOPDESIGN_EXAMPLES_HPP
#define COOPDESIGN_EXAMPLES_HPP

#include "coopdesign/static_assignment.hpp"

namespace coopdesign {

// Built-in benchmark parameters used by the worked-examples command, the
// tests, and the docs. The single-task benchmark is the two-task one seen
// through the hybrid assignment (1/3 weight on the good task).
template <typename R>
EnvironmentT<R> benchmark_environment() {
    EnvironmentT<R> env;
    env.discount = num<R>::from_ratio(3, 5);
    env.p_good = num<R>::from_ratio(1, 6);
    env.p_bad = num<R>::from_ratio(1, 2);
    env.benefit_good = num<R>::from_int(1);
    env.benefit_bad = num<R>::from_int(1);
    env.temptation_good = num<R>::from_int(1);
    env.temptation_bad = num<R>::from_ratio(1, 2);
    env.social_good = num<R>::from_int(1);
    env.social_bad = num<R>::from_ratio(-1, 10);
    return env;
}

template <typename R>
TaskEnvironmentT<R> benchmark_task_environment() {
    TaskEnvironmentT<R> env;
    env.discount = num<R>::from_ratio(3, 5);
    env.arrive_good = num<R>::from_ratio(1, 2);
    env.arrive_bad = num<R>::from_ratio(3, 4);
    env.cover_good = num<R>::from_ratio(3, 10);
    env.cover_bad = num<R>::from_ratio(7, 10);
    env.benefit_good = num<R>::from_int(1);
    env.benefit_bad = num<R>::from_int(1);
    env.temptation_good = num<R>::from_int(1);
    env.temptation_bad = num<R>::from_ratio(1, 2);
    env.social_good = num<R>::from_int(1);
    env.social_bad = num<R>::from_ratio(-1, 10);
    return env;
}

// Rare good games and a small bad-game temptation: the regime where the
// period-length sweep cleanly separates the observable and unobservable
// designers.
inline TaskEnvironment limit_sweep_environment() {
    TaskEnvironment env;
    env.discount = 0.6;
    env.arrive_good = 0.05;
    env.arrive_bad = 0.75;
    env.cover_good = 0.5;
    env.cover_bad = 0.5;
    env.benefit_good = 1.0;
    env.benefit_bad = 1.0;
    env.temptation_good = 0.3;
    env.temptation_bad = 0.05;
    env.social_good = 1.0;
    env.social_bad = -0.1;
    return env;
}

}  // namespace coopdesign

#endif  // COOPDESIGN_EXAMPLES_HPP
