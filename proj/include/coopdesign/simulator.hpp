#ifndef COOPDESIGN_SIMULATOR_HPP
#define COOPDESIGN_SIMULATOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coopdesign/chain.hpp"
#include "coopdesign/static_assignment.hpp"

namespace coopdesign {

// ---------------------------------------------------------------------------
// Deterministic, splittable RNG: xoshiro256++ streams seeded through
// splitmix64. Per-team streams keep a team's draw sequence independent of the
// population size, and uniform doubles are generated without libc
// distributions so runs are bit-reproducible.
// ---------------------------------------------------------------------------

class Rng {
  public:
    explicit Rng(std::uint64_t seed);
    // Stream `index` of a master seed; streams are statistically independent.
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();
    double uniform();  // [0, 1)
    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::uint64_t state_[4];
};

// ---------------------------------------------------------------------------
// Policies. Prescribed cooperation always comes from an analytic module:
// classification for grim/static policies, chain feasibility for chains.
// ---------------------------------------------------------------------------

struct EnvironmentGrimPolicy {
    double reshuffle = 0.0;
};

struct StaticEntryPolicy {
    double nu = 0.0;
    double reshuffle = 0.0;
};

struct StaticStructurePolicy {
    StaticStructure structure;
};

struct ReactiveChainPolicy {
    Chain chain;
};

using SimPolicy = std::variant<EnvironmentGrimPolicy, StaticEntryPolicy, StaticStructurePolicy,
                               ReactiveChainPolicy>;

struct SimConfig {
    std::variant<Environment, TaskEnvironment> env;
    SimPolicy policy;
    long teams = 1000;
    long horizon = 1000;
    std::optional<long> burn_in;        // default: horizon / 10
    std::uint64_t seed = 1;
    long gain_sample_teams = 0;         // 0: sample deviation gains on every team
    bool collect_series = false;        // per-period CSV rows
};

struct GainEstimate {
    std::string state;
    std::string game;                   // "G" or "B"
    bool prescribed_cooperate = false;
    double mean = 0.0;
    double ci_halfwidth = 0.0;          // 95%
    long samples = 0;
    bool low_samples = false;
    double truncation_bound = 0.0;      // discounted tail beyond the horizon window
};

struct CoopRate {
    std::string state;
    std::string game;
    long arrivals = 0;
    long cooperations = 0;
    double rate = 0.0;
};

struct SeriesRow {
    long period = 0;
    double good_task_share = 0.0;
    double bad_task_share = 0.0;
    double coop_rate_good = 0.0;
    double coop_rate_bad = 0.0;
};

struct SimReport {
    double occupancy_good = 0.0;
    double occupancy_bad = 0.0;
    double occupancy_ci = 0.0;          // 95% halfwidth across teams
    std::vector<CoopRate> coop;
    double social_value = 0.0;          // empirical per-period flow
    double social_value_ci = 0.0;
    std::vector<GainEstimate> gains;
    std::vector<SeriesRow> series;
    long teams = 0;
    long periods_measured = 0;
};

// Deterministic given the config; see SimConfig for the policy forms.
SimReport run(const SimConfig& config);

// Deviation-gain estimation alone, sampling at most `samples` teams per
// (state, game) pair.
std::vector<GainEstimate> estimate_deviation_gains(const SimConfig& config, long samples);

}  // namespace coopdesign

#endif  // COOPDESIGN_SIMULATOR_HPP
