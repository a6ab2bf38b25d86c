#include "coopdesign/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "coopdesign/reactive.hpp"
#include "coopdesign/reshuffle.hpp"

namespace coopdesign {

// ---------------------------------------------------------------------------
// RNG
// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ ((index + 1) * 0x9E3779B97F4A7C15ULL);
    return Rng(splitmix64(s));
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

// ---------------------------------------------------------------------------
// Policy compilation
// ---------------------------------------------------------------------------

namespace {

struct CompiledEntry {
    double nu = 0.0;         // probability of the good task each period
    double reshuffle = 0.0;
    bool coop_good = false;  // prescribed cooperation per game
    bool coop_bad = false;
    long team_count = 0;
    int state_base = 0;      // first state id of this entry (good task, bad task)
};

struct Compiled {
    bool chain_mode = false;
    bool env_mode = false;   // games drawn directly from (pG, pB)
    Chain chain;
    std::vector<bool> chain_coop;
    std::vector<CompiledEntry> entries;
    double arrive_good = 0.0, arrive_bad = 0.0;
    double p_good = 0.0, p_bad = 0.0;
    double discount = 0.0;
    double benefit_good = 0.0, benefit_bad = 0.0;
    double temptation_good = 0.0, temptation_bad = 0.0;
    double social_good = 0.0, social_bad = 0.0;
    std::vector<std::string> state_names;
    std::vector<bool> state_is_good_task;
};

void set_incentives_from(const Environment& env, Compiled& c) {
    c.discount = env.discount;
    c.benefit_good = env.benefit_good;
    c.benefit_bad = env.benefit_bad;
    c.temptation_good = env.temptation_good;
    c.temptation_bad = env.temptation_bad;
    c.social_good = env.social_good;
    c.social_bad = env.social_bad;
}

void set_incentives_from(const TaskEnvironment& env, Compiled& c) {
    c.discount = env.discount;
    c.benefit_good = env.benefit_good;
    c.benefit_bad = env.benefit_bad;
    c.temptation_good = env.temptation_good;
    c.temptation_bad = env.temptation_bad;
    c.social_good = env.social_good;
    c.social_bad = env.social_bad;
    c.arrive_good = env.arrive_good;
    c.arrive_bad = env.arrive_bad;
}

void coop_flags(Cooperation outcome, bool& good, bool& bad) {
    good = outcome == Cooperation::Total || outcome == Cooperation::OnlyGood;
    bad = outcome == Cooperation::Total || outcome == Cooperation::OnlyBad;
}

// Teams per entry by largest remainder so the masses are met exactly up to
// integer rounding.
void allocate_teams(std::vector<CompiledEntry>& entries, const std::vector<double>& masses,
                    long teams) {
    std::vector<double> exact(masses.size());
    long assigned = 0;
    for (size_t i = 0; i < masses.size(); ++i) {
        exact[i] = masses[i] * static_cast<double>(teams);
        entries[i].team_count = static_cast<long>(std::floor(exact[i]));
        assigned += entries[i].team_count;
    }
    std::vector<size_t> order(masses.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return exact[a] - std::floor(exact[a]) > exact[b] - std::floor(exact[b]);
    });
    for (size_t k = 0; assigned < teams; ++k, ++assigned)
        entries[order[k % order.size()]].team_count += 1;
}

Compiled compile(const SimConfig& config) {
    Compiled c;
    const Tol<double> tol;

    if (std::holds_alternative<EnvironmentGrimPolicy>(config.policy)) {
        const auto* env = std::get_if<Environment>(&config.env);
        if (!env) throw ValidationError("grim policy needs an environment, not a task environment");
        validate(*env);
        const auto& policy = std::get<EnvironmentGrimPolicy>(config.policy);
        c.env_mode = true;
        set_incentives_from(*env, c);
        c.p_good = env->p_good;
        c.p_bad = env->p_bad;
        CompiledEntry entry;
        entry.reshuffle = policy.reshuffle;
        coop_flags(classify_reshuffled(*env, policy.reshuffle, tol), entry.coop_good,
                   entry.coop_bad);
        entry.team_count = config.teams;
        entry.state_base = 0;
        c.entries = {entry};
        c.state_names = {"env"};
        c.state_is_good_task = {true};
        return c;
    }

    const auto* env = std::get_if<TaskEnvironment>(&config.env);
    if (!env) throw ValidationError("task policies need a task environment");
    validate(*env, tol);
    set_incentives_from(*env, c);

    if (std::holds_alternative<ReactiveChainPolicy>(config.policy)) {
        const auto& policy = std::get<ReactiveChainPolicy>(config.policy);
        c.chain_mode = true;
        c.chain = policy.chain;
        validate_chain(c.chain, tol);
        const auto feasible = full_cooperation_feasible(c.chain, env->arrive_good, env->arrive_bad,
                                                        incentives_of(*env), env->discount, tol);
        c.chain_coop.assign(static_cast<size_t>(c.chain.size()), feasible.feasible);
        for (int s = 0; s < c.chain.size(); ++s) {
            c.state_names.push_back(c.chain.states[static_cast<size_t>(s)].name);
            c.state_is_good_task.push_back(c.chain.states[static_cast<size_t>(s)].task ==
                                           Task::Good);
        }
        return c;
    }

    std::vector<double> masses;
    if (std::holds_alternative<StaticEntryPolicy>(config.policy)) {
        const auto& policy = std::get<StaticEntryPolicy>(config.policy);
        CompiledEntry entry;
        entry.nu = policy.nu;
        entry.reshuffle = policy.reshuffle;
        coop_flags(
            classify_reshuffled(induced_environment(*env, policy.nu), policy.reshuffle, tol),
            entry.coop_good, entry.coop_bad);
        c.entries = {entry};
        masses = {1.0};
    } else {
        const auto& policy = std::get<StaticStructurePolicy>(config.policy);
        if (policy.structure.entries.empty())
            throw ValidationError("static structure policy has no entries");
        for (const auto& e : policy.structure.entries) {
            CompiledEntry entry;
            entry.nu = e.nu;
            entry.reshuffle = e.reshuffle;
            coop_flags(classify_reshuffled(induced_environment(*env, e.nu), e.reshuffle, tol),
                       entry.coop_good, entry.coop_bad);
            c.entries.push_back(entry);
            masses.push_back(e.mass);
        }
    }
    allocate_teams(c.entries, masses, config.teams);
    for (size_t i = 0; i < c.entries.size(); ++i) {
        c.entries[i].state_base = static_cast<int>(c.state_names.size());
        const std::string prefix = c.entries.size() > 1 ? "entry" + std::to_string(i) + ":" : "";
        c.state_names.push_back(prefix + "good-task");
        c.state_is_good_task.push_back(true);
        c.state_names.push_back(prefix + "bad-task");
        c.state_is_good_task.push_back(false);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Welford accumulators for across-team statistics.
// ---------------------------------------------------------------------------

struct Welford {
    long n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    void add(double v) {
        ++n;
        const double d = v - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (v - mean);
    }
    double ci_halfwidth() const {
        if (n < 2) return 0.0;
        const double var = m2 / static_cast<double>(n - 1);
        return 1.96 * std::sqrt(var / static_cast<double>(n));
    }
};

struct GainSlot {
    enum class Phase { Idle, Active, Done };
    Phase phase = Phase::Idle;
    double disc = 1.0;   // delta^(t - t0)
    double accum = 0.0;  // sum delta^(t - t0) * realized benefit
};

}  // namespace

// ---------------------------------------------------------------------------
// Main loop
// ---------------------------------------------------------------------------

SimReport run(const SimConfig& config) {
    if (config.teams < 1) throw ValidationError("need at least one team");
    if (config.horizon < 1) throw ValidationError("need at least one period");
    const long burn_in = config.burn_in.value_or(config.horizon / 10);
    if (burn_in < 0 || burn_in >= config.horizon)
        throw ValidationError("burn-in must lie in [0, horizon)");

    const Compiled c = compile(config);
    const long window = config.horizon - burn_in;
    const int n_states = static_cast<int>(c.state_names.size());
    const int n_keys = 2 * n_states;

    // Deviation-gain bookkeeping: a measurement may stop once the remaining
    // discounted tail is negligible next to the smallest temptation.
    const double cmax = std::max(c.benefit_good, c.benefit_bad);
    const double dmin = std::min(c.temptation_good, c.temptation_bad);
    const double tail_target = 1e-3 * dmin;
    const double disc_cutoff = tail_target * (1.0 - c.discount) / cmax;
    long tail_window = 0;
    {
        double disc = 1.0;
        while (disc >= disc_cutoff && tail_window < config.horizon) {
            disc *= c.discount;
            ++tail_window;
        }
    }
    const double truncation_bound =
        std::pow(c.discount, static_cast<double>(tail_window)) * cmax / (1.0 - c.discount);
    const long gain_teams = config.gain_sample_teams > 0
                                ? std::min(config.gain_sample_teams, config.teams)
                                : config.teams;
    const long last_start = config.horizon - tail_window;  // measurements must fit the window

    Welford occupancy_good_stat, social_stat;
    std::vector<Welford> gain_stats(static_cast<size_t>(n_keys));
    std::vector<long> arrivals(static_cast<size_t>(n_keys), 0);
    std::vector<long> cooperations(static_cast<size_t>(n_keys), 0);

    std::vector<double> series_good, series_bad, series_coop_good, series_coop_bad;
    std::vector<long> series_arrive_good, series_arrive_bad;
    if (config.collect_series) {
        series_good.assign(static_cast<size_t>(config.horizon), 0.0);
        series_bad.assign(static_cast<size_t>(config.horizon), 0.0);
        series_coop_good.assign(static_cast<size_t>(config.horizon), 0.0);
        series_coop_bad.assign(static_cast<size_t>(config.horizon), 0.0);
        series_arrive_good.assign(static_cast<size_t>(config.horizon), 0);
        series_arrive_bad.assign(static_cast<size_t>(config.horizon), 0);
    }

    std::vector<GainSlot> slots(static_cast<size_t>(n_keys));
    std::vector<int> active;
    active.reserve(static_cast<size_t>(n_keys));

    long team_index = 0;
    const size_t n_entries = c.entries.empty() ? 1 : c.entries.size();
    for (size_t entry_index = 0; entry_index < n_entries; ++entry_index) {
        const CompiledEntry* entry = c.entries.empty() ? nullptr : &c.entries[entry_index];
        const long entry_teams = c.chain_mode ? config.teams : entry->team_count;
        for (long t = 0; t < entry_teams; ++t, ++team_index) {
            Rng rng = Rng::stream(config.seed, static_cast<std::uint64_t>(team_index));
            const bool measure_gains = team_index < gain_teams;

            for (auto& slot : slots) slot = GainSlot{};
            active.clear();

            int chain_state = c.chain_mode ? c.chain.start : 0;
            long good_periods = 0;
            double social_accum = 0.0;

            for (long period = 0; period < config.horizon; ++period) {
                // Resolve this period's task, arrival, and play.
                int state_id;
                bool good_task;
                if (c.chain_mode) {
                    state_id = chain_state;
                    good_task = c.state_is_good_task[static_cast<size_t>(state_id)];
                } else if (c.env_mode) {
                    state_id = 0;
                    good_task = true;
                } else {
                    good_task = rng.uniform() < entry->nu;
                    state_id = entry->state_base + (good_task ? 0 : 1);
                }

                bool good_game = false, bad_game = false;
                if (c.env_mode) {
                    const double u = rng.uniform();
                    good_game = u < c.p_good;
                    bad_game = !good_game && u < c.p_good + c.p_bad;
                } else if (good_task) {
                    good_game = rng.uniform() < c.arrive_good;
                } else {
                    bad_game = rng.uniform() < c.arrive_bad;
                }

                bool cooperated = false;
                double benefit_now = 0.0;
                if (good_game || bad_game) {
                    const bool prescribed =
                        c.chain_mode ? c.chain_coop[static_cast<size_t>(state_id)]
                                     : (good_game ? entry->coop_good : entry->coop_bad);
                    cooperated = prescribed;
                    if (cooperated) benefit_now = good_game ? c.benefit_good : c.benefit_bad;
                }

                if (period >= burn_in) {
                    if (good_task) ++good_periods;
                    if (good_game || bad_game) {
                        const int key = 2 * state_id + (bad_game ? 1 : 0);
                        ++arrivals[static_cast<size_t>(key)];
                        if (cooperated) {
                            ++cooperations[static_cast<size_t>(key)];
                            social_accum += good_game ? c.social_good : c.social_bad;
                        }
                    }
                }
                if (config.collect_series) {
                    (good_task ? series_good : series_bad)[static_cast<size_t>(period)] += 1.0;
                    if (good_game) {
                        ++series_arrive_good[static_cast<size_t>(period)];
                        if (cooperated) series_coop_good[static_cast<size_t>(period)] += 1.0;
                    } else if (bad_game) {
                        ++series_arrive_bad[static_cast<size_t>(period)];
                        if (cooperated) series_coop_bad[static_cast<size_t>(period)] += 1.0;
                    }
                }

                // Advance running continuation measurements, retiring the ones
                // whose tail no longer matters.
                for (size_t i = 0; i < active.size();) {
                    GainSlot& slot = slots[static_cast<size_t>(active[i])];
                    slot.disc *= c.discount;
                    slot.accum += slot.disc * benefit_now;
                    if (slot.disc < disc_cutoff) {
                        slot.phase = GainSlot::Phase::Done;
                        active[i] = active.back();
                        active.pop_back();
                    } else {
                        ++i;
                    }
                }

                // Open a measurement at this encounter if the window allows.
                if (measure_gains && (good_game || bad_game) && period >= burn_in &&
                    period < last_start) {
                    const int key = 2 * state_id + (bad_game ? 1 : 0);
                    GainSlot& slot = slots[static_cast<size_t>(key)];
                    if (slot.phase == GainSlot::Phase::Idle) {
                        slot.phase = GainSlot::Phase::Active;
                        slot.disc = 1.0;
                        slot.accum = 0.0;
                        active.push_back(key);
                    }
                }

                // Chain transition / reshuffling at the period boundary.
                if (c.chain_mode) {
                    const Outcome outcome = good_game  ? Outcome::GoodGame
                                            : bad_game ? Outcome::BadGame
                                                       : Outcome::NoGame;
                    const auto& row = c.chain.row(chain_state, outcome);
                    double u = rng.uniform();
                    int next = c.chain.size() - 1;
                    for (int s = 0; s < c.chain.size(); ++s) {
                        u -= row[static_cast<size_t>(s)];
                        if (u < 0.0) {
                            next = s;
                            break;
                        }
                    }
                    chain_state = next;
                } else if (entry->reshuffle > 0.0 && rng.uniform() < entry->reshuffle) {
                    // The team dissolves: every open continuation stream ends here.
                    for (int key : active) slots[static_cast<size_t>(key)].phase = GainSlot::Phase::Done;
                    active.clear();
                }
            }

            for (int key : active) slots[static_cast<size_t>(key)].phase = GainSlot::Phase::Done;
            active.clear();

            if (measure_gains) {
                for (int key = 0; key < n_keys; ++key) {
                    const GainSlot& slot = slots[static_cast<size_t>(key)];
                    if (slot.phase != GainSlot::Phase::Done) continue;
                    const bool bad = (key % 2) == 1;
                    const double temptation = bad ? c.temptation_bad : c.temptation_good;
                    gain_stats[static_cast<size_t>(key)].add(temptation - slot.accum);
                }
            }
            occupancy_good_stat.add(static_cast<double>(good_periods) /
                                    static_cast<double>(window));
            social_stat.add(social_accum / static_cast<double>(window));
        }
        if (c.chain_mode) break;
    }

    SimReport report;
    report.teams = config.teams;
    report.periods_measured = window;
    report.occupancy_good = occupancy_good_stat.mean;
    report.occupancy_bad = 1.0 - occupancy_good_stat.mean;
    report.occupancy_ci = occupancy_good_stat.ci_halfwidth();
    report.social_value = social_stat.mean;
    report.social_value_ci = social_stat.ci_halfwidth();

    for (int key = 0; key < n_keys; ++key) {
        const int state_id = key / 2;
        const bool bad = (key % 2) == 1;
        if (arrivals[static_cast<size_t>(key)] > 0) {
            CoopRate rate;
            rate.state = c.state_names[static_cast<size_t>(state_id)];
            rate.game = bad ? "B" : "G";
            rate.arrivals = arrivals[static_cast<size_t>(key)];
            rate.cooperations = cooperations[static_cast<size_t>(key)];
            rate.rate = static_cast<double>(rate.cooperations) /
                        static_cast<double>(rate.arrivals);
            report.coop.push_back(rate);
        }
        const Welford& stat = gain_stats[static_cast<size_t>(key)];
        if (stat.n == 0) continue;
        GainEstimate gain;
        gain.state = c.state_names[static_cast<size_t>(state_id)];
        gain.game = bad ? "B" : "G";
        if (c.chain_mode) {
            gain.prescribed_cooperate = c.chain_coop[static_cast<size_t>(state_id)];
        } else {
            // state ids alternate good-task/bad-task per entry; env mode has
            // a single state with both games.
            const CompiledEntry* entry = &c.entries[0];
            for (const auto& e : c.entries)
                if (state_id >= e.state_base) entry = &e;
            gain.prescribed_cooperate = bad ? entry->coop_bad : entry->coop_good;
        }
        gain.mean = stat.mean;
        gain.ci_halfwidth = stat.ci_halfwidth();
        gain.samples = stat.n;
        gain.low_samples = stat.n < 30;
        gain.truncation_bound = truncation_bound;
        report.gains.push_back(gain);
    }

    if (config.collect_series) {
        const double teams = static_cast<double>(config.teams);
        for (long period = 0; period < config.horizon; ++period) {
            SeriesRow row;
            row.period = period;
            row.good_task_share = series_good[static_cast<size_t>(period)] / teams;
            row.bad_task_share = series_bad[static_cast<size_t>(period)] / teams;
            const long ag = series_arrive_good[static_cast<size_t>(period)];
            const long ab = series_arrive_bad[static_cast<size_t>(period)];
            row.coop_rate_good =
                ag > 0 ? series_coop_good[static_cast<size_t>(period)] / static_cast<double>(ag)
                       : 0.0;
            row.coop_rate_bad =
                ab > 0 ? series_coop_bad[static_cast<size_t>(period)] / static_cast<double>(ab)
                       : 0.0;
            report.series.push_back(row);
        }
    }
    return report;
}

std::vector<GainEstimate> estimate_deviation_gains(const SimConfig& config, long samples) {
    SimConfig limited = config;
    limited.gain_sample_teams = samples;
    return run(limited).gains;
}

}  // namespace coopdesign
