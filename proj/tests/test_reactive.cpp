#include <doctest.h>

#include <cmath>

#include "coopdesign/examples.hpp"
#include "coopdesign/reactive.hpp"
#include "coopdesign/simulator.hpp"

using namespace coopdesign;

namespace {

template <typename R>
ChainSolutionT<R> solve_benchmark_chain(int dwell, const R& extra, bool observable) {
    const auto env = benchmark_task_environment<R>();
    const auto chain = build_trigger_chain(dwell, extra, observable);
    return solve_values(chain, env.arrive_good, env.arrive_bad, incentives_of(env), env.discount);
}

}  // namespace

TEST_CASE("trigger chains are valid and reachable") {
    for (const bool observable : {true, false}) {
        for (int dwell = 0; dwell <= 3; ++dwell) {
            for (const double extra : {0.0, 0.4, 0.99}) {
                const auto chain = build_trigger_chain(dwell, extra, observable);
                CHECK_NOTHROW(validate_chain(chain));
                const int expected = 1 + dwell + (extra > 0.0 ? 1 : 0);
                CHECK(chain.size() == expected);
            }
        }
    }
    CHECK_THROWS_AS(build_trigger_chain(0, 1.0, true), ValidationError);
    CHECK_THROWS_AS(build_trigger_chain(-1, 0.0, true), ValidationError);
}

TEST_CASE("steady state of the observable benchmark chain occupies 7/16 bad") {
    const auto chain = build_trigger_chain(1, Rational(5) / 9, true);
    const auto pi = steady_state(chain, Rational(1) / 2, Rational(3) / 4);
    Rational bad = 0;
    for (int s = 0; s < chain.size(); ++s)
        if (chain.states[static_cast<size_t>(s)].task == Task::Bad)
            bad += pi[static_cast<size_t>(s)];
    CHECK(bad == Rational(7) / 16);
    CHECK(stationarity_residual(chain, Rational(1) / 2, Rational(3) / 4, pi) == 0);
}

TEST_CASE("steady state of the unobservable benchmark chain occupies 32/59 bad") {
    const auto chain = build_trigger_chain(1, Rational(5) / 27, false);
    const auto pi = steady_state(chain, Rational(1) / 2, Rational(3) / 4);
    Rational bad = 0;
    for (int s = 0; s < chain.size(); ++s)
        if (chain.states[static_cast<size_t>(s)].task == Task::Bad)
            bad += pi[static_cast<size_t>(s)];
    CHECK(bad == Rational(32) / 59);
}

TEST_CASE("constant chain is absorbing") {
    const auto chain = build_trigger_chain<double>(0, 0.0, true);  // good task forever
    const auto pi = steady_state(chain, 0.5, 0.75);
    REQUIRE(pi.size() == 1);
    CHECK(pi[0] == doctest::Approx(1.0));
}

TEST_CASE("reducible and periodic chains get their limiting occupation") {
    // Transient good state feeding an absorbing bad state.
    Chain chain;
    chain.states = {{Task::Good, "start"}, {Task::Bad, "sink"}};
    const std::vector<double> to_sink = {0.0, 1.0};
    const std::vector<double> stay = {0.0, 1.0};
    chain.kernel = {{to_sink, to_sink, to_sink}, {stay, stay, stay}};
    const auto pi = steady_state(chain, 0.5, 0.75);
    CHECK(pi[0] == doctest::Approx(0.0));
    CHECK(pi[1] == doctest::Approx(1.0));

    // Deterministic two-cycle: period-averaged occupation is half and half.
    Chain cycle;
    cycle.states = {{Task::Good, "a"}, {Task::Bad, "b"}};
    const std::vector<double> to_b = {0.0, 1.0};
    const std::vector<double> to_a = {1.0, 0.0};
    cycle.kernel = {{to_b, to_b, to_b}, {to_a, to_a, to_a}};
    const auto pi2 = steady_state(cycle, 0.5, 0.75);
    CHECK(pi2[0] == doctest::Approx(0.5));
    CHECK(pi2[1] == doctest::Approx(0.5));
}

TEST_CASE("multiple reachable recurrent classes mix by absorption probability") {
    Chain chain;
    chain.states = {{Task::Good, "split"}, {Task::Good, "stay-good"}, {Task::Bad, "stay-bad"}};
    const std::vector<double> split = {0.0, 0.25, 0.75};
    const std::vector<double> good = {0.0, 1.0, 0.0};
    const std::vector<double> bad = {0.0, 0.0, 1.0};
    chain.kernel = {{split, split, split}, {good, good, good}, {bad, bad, bad}};
    const auto pi = steady_state(chain, 0.5, 0.75);
    CHECK(pi[1] == doctest::Approx(0.25));
    CHECK(pi[2] == doctest::Approx(0.75));
}

TEST_CASE("value function of the observable benchmark chain") {
    const auto solution = solve_benchmark_chain(1, Rational(5) / 9, true);
    CHECK(solution.values[0] == Rational(10) / 7);  // good-task state
    CHECK(solution.values[1] == Rational(5) / 3);   // first bad state
    CHECK(solution.slacks[0] == 0);                 // exact indifference at the good game
    // Bad-state slacks are strictly positive.
    CHECK(solution.slacks[1] > 0);
    CHECK(solution.slacks[2] > 0);
    CHECK(solution.bad_share == Rational(7) / 16);
    // Social value: (9/16)(1/2)(1) + (7/16)(3/4)(-1/10) = 159/640.
    CHECK(solution.social_value == Rational(159) / 640);
}

TEST_CASE("value function of the unobservable benchmark chain") {
    const auto solution = solve_benchmark_chain(1, Rational(5) / 27, false);
    CHECK(solution.values[0] == Rational(3) / 2);
    CHECK(solution.slacks[0] == 0);
    CHECK(solution.bad_share == Rational(32) / 59);
}

TEST_CASE("constant bad chain pays the perpetual bad stream") {
    Chain chain;
    chain.states = {{Task::Bad, "bad"}};
    const std::vector<double> stay = {1.0};
    chain.kernel = {{stay, stay, stay}};
    const auto env = benchmark_task_environment<double>();
    const auto solution =
        solve_values(chain, env.arrive_good, env.arrive_bad, incentives_of(env), env.discount);
    CHECK(solution.values[0] == doctest::Approx(0.75 / 0.4));  // aB cB / (1 - delta)
    const auto feasible = full_cooperation_feasible(chain, env.arrive_good, env.arrive_bad,
                                                    incentives_of(env), env.discount);
    CHECK(feasible.feasible);  // dB = 1/2 < (3/2)(3/4)
}

TEST_CASE("full cooperation fails without the extra bad period") {
    const auto env = benchmark_task_environment<double>();
    const auto chain = build_trigger_chain<double>(1, 0.0, true);
    const auto feasible = full_cooperation_feasible(chain, env.arrive_good, env.arrive_bad,
                                                    incentives_of(env), env.discount);
    CHECK_FALSE(feasible.feasible);
    CHECK(feasible.binding_state == 0);  // the good-task state
    CHECK(feasible.min_slack < 0.0);
}

TEST_CASE("observable designer reproduces the published optimum exactly") {
    const auto design = design_observable(benchmark_task_environment<Rational>());
    CHECK(design.dwell == 1);
    CHECK(design.extra == Rational(5) / 9);
    CHECK(design.solution.bad_share == Rational(7) / 16);
    CHECK(design.cooperating_mass == Rational(8) / 15);
    REQUIRE(design.specialist_task.has_value());
    CHECK(*design.specialist_task == Task::Bad);
    CHECK(design.specialist_mass == Rational(7) / 15);
    CHECK(design.social_value == Rational(53) / 400);
}

TEST_CASE("unobservable designer reproduces the published optimum exactly") {
    const auto design = design_unobservable(benchmark_task_environment<Rational>());
    CHECK(design.dwell == 1);
    CHECK(design.extra == Rational(5) / 27);
    CHECK(design.solution.bad_share == Rational(32) / 59);
    CHECK(design.social_value == Rational(37) / 300);
}

TEST_CASE("designer premises are enforced") {
    TaskEnvironment env = benchmark_task_environment<double>();
    env.temptation_bad = 0.9;  // not below (3/2)(1/2) = 3/4
    CHECK_THROWS_AS(design_observable(env), PremiseError);

    env = benchmark_task_environment<double>();
    env.temptation_good = 0.7;  // full specialization would already work
    CHECK_THROWS_AS(design_observable(env), PremiseError);

    env = benchmark_task_environment<double>();
    env.temptation_good = 1.2;  // max d exceeds (3/2)(3/4)
    CHECK_THROWS_AS(design_unobservable(env), PremiseError);
}

TEST_CASE("temptation just above the specialization bound needs almost no dwell") {
    TaskEnvironment env = benchmark_task_environment<double>();
    env.temptation_good = 0.76;  // bound is 0.75
    env.temptation_bad = 0.1;
    const auto design = design_observable(env);
    CHECK(design.dwell == 0);
    CHECK(design.extra > 0.0);
    CHECK(design.extra < 0.2);
    // Slack oracle: the chain's good-game slack is zero and the rest clear.
    const auto feasible = full_cooperation_feasible(design.chain, env.arrive_good, env.arrive_bad,
                                                    incentives_of(env), env.discount);
    CHECK(feasible.feasible);
    CHECK(std::fabs(design.solution.slacks[0]) <= 1e-9);
}

TEST_CASE("certain good-game arrivals make observation worthless") {
    TaskEnvironment env;
    env.discount = 0.6;
    env.arrive_good = 1.0;
    env.arrive_bad = 1.0;
    env.cover_good = 0.5;
    env.cover_bad = 0.5;
    env.benefit_good = 1.0;
    env.benefit_bad = 2.0;
    env.temptation_good = 1.6;  // above (3/2)(1) = 1.5
    env.temptation_bad = 0.5;   // below 1.5
    env.social_good = 1.0;
    env.social_bad = -0.1;
    const auto obs = design_observable(env);
    const auto unobs = design_unobservable(env);
    CHECK(obs.dwell == unobs.dwell);
    CHECK(obs.extra == doctest::Approx(unobs.extra));
    CHECK(obs.solution.bad_share == doctest::Approx(unobs.solution.bad_share));
    CHECK(obs.social_value == doctest::Approx(unobs.social_value));
}

TEST_CASE("reactive strictly improves on static when temptations differ") {
    const auto env = benchmark_task_environment<double>();
    CHECK(strict_improvement_check(env));

    TaskEnvironment tied = env;
    tied.temptation_good = 0.8;
    tied.temptation_bad = 0.8;
    CHECK_FALSE(strict_improvement_check(tied));

    TaskEnvironment outside = env;
    outside.temptation_good = 0.5;  // specialization regime: premises fail
    CHECK_THROWS_AS(strict_improvement_check(outside), PremiseError);

    // Numeric cross-check of the ordering on the benchmark environment.
    const double static_value = optimal_static(env).social_value;
    const double unobs_value = design_unobservable(env).social_value;
    const double obs_value = design_observable(env).social_value;
    CHECK(static_value == doctest::Approx(0.105));
    CHECK(unobs_value == doctest::Approx(37.0 / 300.0));
    CHECK(obs_value == doctest::Approx(53.0 / 400.0));
    CHECK(static_value < unobs_value - 1e-9);
    CHECK(unobs_value < obs_value - 1e-9);
}

TEST_CASE("no feasible enumerated chain uses less bad time than the designed one") {
    const auto env = benchmark_task_environment<double>();
    for (const bool observable : {true, false}) {
        const auto design = design_reactive(env, observable);
        const double designed_share = design.solution.bad_share;
        for (int dwell = 0; dwell <= 3; ++dwell) {
            for (int xi = 0; xi < 20; ++xi) {
                const double extra = xi * 0.05;
                const auto chain = build_trigger_chain<double>(dwell, extra, observable);
                const auto feasible =
                    full_cooperation_feasible(chain, env.arrive_good, env.arrive_bad,
                                              incentives_of(env), env.discount);
                if (!feasible.feasible) continue;
                const double share = trigger_bad_share(dwell, extra, env.arrive_good, observable);
                CHECK(share >= designed_share - 1e-12);
            }
        }
    }
}

TEST_CASE("closed-form occupancy matches the steady-state solver") {
    Rng rng(606);
    for (int trial = 0; trial < 200; ++trial) {
        const int dwell = static_cast<int>(rng.uniform() * 4.0);
        const double extra = rng.uniform() * 0.98;
        const bool observable = rng.uniform() < 0.5;
        const double arrive_good = 0.1 + 0.9 * rng.uniform();
        const auto chain = build_trigger_chain<double>(dwell, extra, observable);
        const auto pi = steady_state(chain, arrive_good, 0.75);
        double bad = 0.0;
        for (int s = 0; s < chain.size(); ++s)
            if (chain.states[static_cast<size_t>(s)].task == Task::Bad)
                bad += pi[static_cast<size_t>(s)];
        CHECK(std::fabs(bad - trigger_bad_share(dwell, extra, arrive_good, observable)) <= 1e-12);
        CHECK(stationarity_residual(chain, arrive_good, 0.75, pi) <= 1e-10);
    }
}

TEST_CASE("designed chains cooperate everywhere and specialists sit on one task") {
    Rng rng(4242);
    int designed = 0;
    for (int trial = 0; trial < 200; ++trial) {
        TaskEnvironment env = benchmark_task_environment<double>();
        env.discount = 0.3 + 0.6 * rng.uniform();
        env.arrive_good = 0.2 + 0.7 * rng.uniform();
        env.arrive_bad = 0.2 + 0.7 * rng.uniform();
        env.cover_good = 0.1 + 0.8 * rng.uniform();
        env.cover_bad = 1.0 - env.cover_good;
        const double w = continuation_weight(env.discount);
        const double good_stake = w * env.arrive_good * env.benefit_good;
        const double bad_stake = w * env.arrive_bad * env.benefit_bad;
        if (bad_stake <= good_stake * 1.05) continue;
        env.temptation_good = good_stake + (bad_stake - good_stake) * (0.1 + 0.8 * rng.uniform());
        env.temptation_bad = good_stake * 0.5 * rng.uniform() + 1e-3;
        const bool observable = rng.uniform() < 0.5;
        const auto design = design_reactive(env, observable);
        ++designed;
        const auto feasible = full_cooperation_feasible(design.chain, env.arrive_good,
                                                        env.arrive_bad, incentives_of(env),
                                                        env.discount);
        CHECK(feasible.feasible);
        CHECK(std::fabs(design.solution.slacks[0]) <= 1e-9);
        if (!design.all_noncooperative) {
            const double coverage = design.cooperating_mass * design.solution.good_share +
                                    (design.specialist_task == Task::Good
                                         ? design.specialist_mass
                                         : 0.0);
            CHECK(std::fabs(coverage - env.cover_good) <= 1e-9);
        }
    }
    CHECK(designed > 50);
}

TEST_CASE("harmful enough bad cooperation shuts the reactive design down") {
    TaskEnvironment env = benchmark_task_environment<double>();
    env.social_bad = -2.0;  // (9/16)(1/2) - (7/16)(3/4)*2 < 0
    const auto design = design_observable(env);
    CHECK(design.all_noncooperative);
    CHECK(design.social_value == 0.0);
    CHECK(design.cooperating_mass == 0.0);

    // A chain value of exactly zero also goes non-cooperative.
    TaskEnvironmentQ boundary = benchmark_task_environment<Rational>();
    boundary.social_bad = Rational(-6) / 7;  // (9/16)(1/2) = (7/16)(3/4)(6/7)
    const auto tied = design_observable(boundary);
    CHECK(tied.solution.social_value == 0);
    CHECK(tied.all_noncooperative);
}

TEST_CASE("period sweep separates observable and unobservable designs") {
    const auto env = limit_sweep_environment();
    const std::vector<double> periods = {1.0, 0.5, 0.25, 0.125, 0.0625};
    const auto points = period_sweep(env, periods);
    REQUIRE(points.size() == 5);
    for (const auto& point : points) {
        REQUIRE(point.static_rate.has_value());
        REQUIRE(point.observable_rate.has_value());
        REQUIRE(point.unobservable_rate.has_value());
    }
    const double unobs_gap_1 = *points[0].unobservable_rate - *points[0].static_rate;
    const double obs_gap_1 = *points[0].observable_rate - *points[0].static_rate;
    REQUIRE(unobs_gap_1 > 0.0);
    REQUIRE(obs_gap_1 > 0.0);
    double previous_unobs_gap = unobs_gap_1;
    for (size_t i = 1; i < points.size(); ++i) {
        // Static value per unit of time improves as periods shrink.
        CHECK(*points[i].static_rate >= *points[i - 1].static_rate - 1e-12);
        const double unobs_gap = *points[i].unobservable_rate - *points[i].static_rate;
        const double obs_gap = *points[i].observable_rate - *points[i].static_rate;
        CHECK(unobs_gap < previous_unobs_gap);
        CHECK(obs_gap > 0.5 * obs_gap_1);
        previous_unobs_gap = unobs_gap;
    }
    CHECK(previous_unobs_gap < 0.1 * unobs_gap_1);
}

TEST_CASE("period sweep reports premise failures per entry without dying") {
    TaskEnvironment env = benchmark_task_environment<double>();
    env.temptation_bad = 0.8;  // violates dB < (3/2)(1/2) at T = 1 only
    const auto points = period_sweep(env, {1.0, 0.5});
    REQUIRE(points.size() == 2);
    CHECK(points[0].static_rate.has_value());
    CHECK_FALSE(points[0].observable_rate.has_value());
    CHECK(points[0].note.find("observable") != std::string::npos);
    CHECK(points[1].observable_rate.has_value());
}

TEST_CASE("chain DOT export is stable and complete") {
    const auto design = design_observable(benchmark_task_environment<double>());
    const std::string dot = to_dot(design.chain);
    CHECK(dot == to_dot(design.chain));
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("g=G") != std::string::npos);
    for (int s = 0; s < design.chain.size(); ++s)
        CHECK(dot.find("s" + std::to_string(s)) != std::string::npos);
}
