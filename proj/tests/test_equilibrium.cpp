#include <doctest.h>

#include <cmath>

#include "coopdesign/equilibrium.hpp"
#include "coopdesign/examples.hpp"
#include "coopdesign/simulator.hpp"
#include "coopdesign/stage_game.hpp"

using namespace coopdesign;

namespace {

// Lemma-1 oracle: enumerate candidate cooperation sets, keep the feasible
// ones under grim-trigger one-shot-deviation checks, and pick the one that
// maximizes the players' stake. Independent of classify's branch structure.
template <typename R>
Cooperation classify_oracle(const EnvironmentT<R>& env, const Tol<R>& tol = {}) {
    const R w = continuation_weight(env.discount);
    struct Candidate {
        bool good, bad;
        Cooperation outcome;
    };
    const Candidate candidates[] = {{true, true, Cooperation::Total},
                                    {true, false, Cooperation::OnlyGood},
                                    {false, true, Cooperation::OnlyBad},
                                    {false, false, Cooperation::None}};
    Cooperation best = Cooperation::None;
    R best_stake = num<R>::from_int(-1);
    for (const auto& c : candidates) {
        R stake = num<R>::from_int(0);
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

Environment base_env() {
    Environment env;
    env.discount = 0.6;
    env.p_good = 0.25;
    env.p_bad = 0.25;
    env.benefit_good = 1.0;
    env.benefit_bad = 1.0;
    env.temptation_good = 1.0;
    env.temptation_bad = 0.5;
    env.social_good = 1.0;
    env.social_bad = -0.1;
    return env;
}

}  // namespace

TEST_CASE("benchmark single-task environment sits exactly on the total boundary") {
    // The total-cooperation condition holds with equality here; ties cooperate.
    CHECK(classify(benchmark_environment<double>()) == Cooperation::Total);
    CHECK(classify(benchmark_environment<Rational>()) == Cooperation::Total);
    // In exact arithmetic the boundary is an equality, not a near miss.
    const auto env = benchmark_environment<Rational>();
    const Rational lhs = env.temptation_good;
    const Rational rhs = continuation_weight(env.discount) *
                         (env.p_good * env.benefit_good + env.p_bad * env.benefit_bad);
    CHECK(lhs == rhs);
}

TEST_CASE("no cooperation when continuation stakes fall short") {
    Environment env = base_env();
    env.p_good = 0.5;
    env.p_bad = 0.0001;
    env.temptation_bad = 1.0;
    CHECK(classify(env) == Cooperation::None);

    Environment harsh = base_env();
    harsh.discount = 0.1;
    harsh.p_good = 0.1;
    harsh.p_bad = 0.1;
    harsh.temptation_good = 100.0;
    harsh.temptation_bad = 100.0;
    CHECK(classify(harsh) == Cooperation::None);
}

TEST_CASE("environment validation rejects out-of-range fields") {
    Environment env = base_env();
    env.discount = 1.0;
    CHECK_THROWS_AS(classify(env), ValidationError);
    env = base_env();
    env.p_good = 0.7;
    env.p_bad = 0.5;
    CHECK_THROWS_AS(classify(env), ValidationError);
    env = base_env();
    env.social_bad = 0.2;
    CHECK_THROWS_AS(classify(env), ValidationError);
}

TEST_CASE("effective discount") {
    CHECK(effective_discount(0.6, 0.0) == doctest::Approx(0.6));
    CHECK(effective_discount(0.6, 1.0) == doctest::Approx(0.0));
    CHECK(effective_discount(0.6, 4.0 / 9.0) == doctest::Approx(1.0 / 3.0));
    CHECK(effective_discount(Rational(3) / 5, Rational(4) / 9) == Rational(1) / 3);
    CHECK_THROWS_AS(effective_discount(0.6, 1.2), ValidationError);
    CHECK_THROWS_AS(effective_discount(0.6, -0.1), ValidationError);
}

TEST_CASE("classification matches the feasible-set oracle on a parameter grid") {
    Rng rng(12345);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        Environment env = base_env();
        env.discount = 0.05 + 0.9 * rng.uniform();
        env.p_good = 0.02 + 0.47 * rng.uniform();
        env.p_bad = 0.02 + 0.47 * rng.uniform();
        env.benefit_good = 0.2 + 2.0 * rng.uniform();
        env.benefit_bad = 0.2 + 2.0 * rng.uniform();
        env.temptation_good = 0.05 + 2.0 * rng.uniform();
        env.temptation_bad = 0.05 + 2.0 * rng.uniform();
        if (env.p_good + env.p_bad > 1.0) continue;
        CHECK(classify(env) == classify_oracle(env));
        ++checked;
    }
    CHECK(checked > 1500);
}

TEST_CASE("raising the discount factor never destroys total cooperation") {
    Rng rng(777);
    for (int trial = 0; trial < 500; ++trial) {
        Environment env = base_env();
        env.p_good = 0.05 + 0.4 * rng.uniform();
        env.p_bad = 0.05 + 0.4 * rng.uniform();
        env.temptation_good = 0.05 + 1.5 * rng.uniform();
        env.temptation_bad = 0.05 + 1.5 * rng.uniform();
        const double lo = 0.05 + 0.5 * rng.uniform();
        const double hi = lo + (0.98 - lo) * rng.uniform();
        const Cooperation at_lo = classify(with_discount(env, lo));
        const Cooperation at_hi = classify(with_discount(env, hi));
        if (at_lo == Cooperation::Total) CHECK(at_hi == Cooperation::Total);
        if (at_hi == Cooperation::None) CHECK(at_lo == Cooperation::None);
    }
}

TEST_CASE("region geometry: good temptation dominant") {
    const GamePrimitives good{1.0, 1.0};   // cG, dG
    const GamePrimitives bad{1.0, 0.5};    // cB, dB
    const auto geo = region_boundaries(good, bad);
    REQUIRE(geo.partial_boundary.has_value());
    CHECK(geo.x_intercept == doctest::Approx(1.0));
    CHECK(geo.y_intercept == doctest::Approx(1.0));
    CHECK(geo.partial_boundary->x0 == doctest::Approx(0.5));  // dB/cB
    REQUIRE(geo.regions.size() == 3);
    CHECK(geo.regions[0].id == 1);
    CHECK(geo.regions[1].id == 2);
    CHECK(geo.regions[2].id == 3);
    CHECK(geo.regions[2].outcome == Cooperation::OnlyBad);
}

TEST_CASE("region geometry: bad temptation dominant") {
    const GamePrimitives good{1.0, 0.5};
    const GamePrimitives bad{1.0, 1.0};
    const auto geo = region_boundaries(good, bad);
    REQUIRE(geo.partial_boundary.has_value());
    CHECK(geo.partial_boundary->y0 == doctest::Approx(0.5));  // dG/cG
    REQUIRE(geo.regions.size() == 3);
    CHECK(geo.regions[2].id == 4);
    CHECK(geo.regions[2].outcome == Cooperation::OnlyGood);
}

TEST_CASE("region geometry: equal temptations leave only regions 1 and 2") {
    const auto geo = region_boundaries(GamePrimitives{1.0, 0.75}, GamePrimitives{1.0, 0.75});
    CHECK_FALSE(geo.partial_boundary.has_value());
    REQUIRE(geo.regions.size() == 2);
    CHECK(geo.regions[0].id == 1);
    CHECK(geo.regions[1].id == 2);
}

TEST_CASE("region labels agree with plane classification on a dense grid") {
    const GamePrimitives cases[][2] = {
        {{1.0, 1.0}, {1.0, 0.5}},   // dG > dB
        {{1.0, 0.4}, {1.3, 0.9}},   // dG < dB
    };
    for (const auto& pair : cases) {
        const auto geo = region_boundaries(pair[0], pair[1]);
        // Representative points themselves must classify to their labels.
        for (const auto& region : geo.regions)
            CHECK(classify_plane_point(region.x, region.y, pair[0], pair[1]) == region.outcome);
        // And geometry-based region membership agrees with classification.
        const double maxd = std::max(pair[0].temptation, pair[1].temptation);
        for (int i = 1; i <= 40; ++i) {
            for (int j = 1; j <= 40; ++j) {
                const double x = geo.x_intercept * 1.4 * i / 41.0;
                const double y = geo.y_intercept * 1.4 * j / 41.0;
                const Cooperation got = classify_plane_point(x, y, pair[0], pair[1]);
                Cooperation expect;
                if (x * pair[1].coop_benefit + y * pair[0].coop_benefit >= maxd - 1e-9)
                    expect = Cooperation::Total;
                else if (pair[0].temptation > pair[1].temptation)
                    expect = x * pair[1].coop_benefit >= pair[1].temptation - 1e-9
                                 ? Cooperation::OnlyBad
                                 : Cooperation::None;
                else
                    expect = y * pair[0].coop_benefit >= pair[0].temptation - 1e-9
                                 ? Cooperation::OnlyGood
                                 : Cooperation::None;
                CHECK(got == expect);
            }
        }
    }
}

TEST_CASE("plane points invert to environments consistently") {
    const GamePrimitives good{1.0, 1.0};
    const GamePrimitives bad{1.0, 0.5};
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const double delta = 0.5;  // weight 1: x,y are probabilities directly
        const double x = 0.49 * rng.uniform() + 0.005;
        const double y = 0.49 * rng.uniform() + 0.005;
        Environment env;
        env.discount = delta;
        env.p_bad = x;
        env.p_good = y;
        env.benefit_good = good.coop_benefit;
        env.benefit_bad = bad.coop_benefit;
        env.temptation_good = good.temptation;
        env.temptation_bad = bad.temptation;
        env.social_good = 1.0;
        env.social_bad = -1.0;
        CHECK(classify(env) == classify_plane_point(x, y, good, bad));
    }
}

TEST_CASE("comparative-statics thresholds") {
    Environment env = base_env();
    env.p_good = 0.4;
    env.p_bad = 0.4;
    env.temptation_good = 0.2;
    env.temptation_bad = 1.0;
    const auto th = compstat_thresholds(env);
    CHECK(th.max_temptation_good == doctest::Approx(0.5));

    Environment bench = benchmark_environment<double>();
    const auto th2 = compstat_thresholds(bench);
    CHECK(th2.whistleblower_temptation_bad == doctest::Approx(1.0));
    // dG >= dB: no benefit level enables good-only cooperation.
    CHECK_FALSE(th2.min_benefit_good.has_value());

    REQUIRE(th.min_benefit_good.has_value());
    // Condition 2 needs cG >= dG/(w pG) = 0.2/(1.5*0.4) = 1/3; condition 3
    // needs cG > pB cB dG/(pG (dB-dG)) = 0.4*1*0.2/(0.4*0.8) = 0.25.
    CHECK(*th.min_benefit_good == doctest::Approx(1.0 / 3.0));
    CHECK(th.min_benefit_good_attained);
}

TEST_CASE("bonus tradeoff evaluates the flow change of buying cooperation") {
    Environment env = base_env();
    env.p_good = 0.25;
    env.p_bad = 0.5;
    env.social_bad = -0.4;
    CHECK(bonus_tradeoff(env, env.benefit_good + 0.6) ==
          doctest::Approx(0.5 * -0.4 + 0.25 * 0.6));
}

TEST_CASE("COOPDESIGN_TOL overrides the default tolerance") {
    CHECK(global_tolerance() == kDefaultTol);
    setenv("COOPDESIGN_TOL", "0.25", 1);
    CHECK(global_tolerance() == 0.25);
    unsetenv("COOPDESIGN_TOL");
    CHECK(global_tolerance() == kDefaultTol);
}

TEST_CASE("whistleblower rewards above the threshold force good-only cooperation") {
    Rng rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        Environment env = base_env();
        env.p_good = 0.1 + 0.4 * rng.uniform();
        env.p_bad = 0.1 + 0.4 * rng.uniform();
        if (env.p_good + env.p_bad > 1.0) continue;
        const double w = continuation_weight(env.discount);
        // Make the good game sustainable alone, then push dB past the threshold.
        env.temptation_good = 0.9 * w * env.p_good * env.benefit_good;
        const auto th = compstat_thresholds(env);
        env.temptation_bad = th.whistleblower_temptation_bad * 1.05;
        CHECK(classify(env) == Cooperation::OnlyGood);
    }
}
