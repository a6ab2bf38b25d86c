#ifndef COOPDESIGN_CHAIN_HPP
#define COOPDESIGN_CHAIN_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "coopdesign/errors.hpp"
#include "coopdesign/numeric.hpp"

namespace coopdesign {

enum class Task { Good, Bad };
enum class Outcome { GoodGame = 0, BadGame = 1, NoGame = 2 };

// Reactive assignment as a finite Markov chain over phase states. Each state
// carries the task worked this period; the successor distribution may
// condition on the period's game outcome (only chains for designers that
// observe good games actually use the conditioning).
template <typename R>
struct ChainT {
    struct State {
        Task task = Task::Good;
        std::string name;
    };

    std::vector<State> states;
    // kernel[s][outcome] is a distribution over successor states; outcomes
    // impossible at s (a bad game on the good task) carry a copy of the
    // no-game row so the row set is always total.
    std::vector<std::array<std::vector<R>, 3>> kernel;
    int start = 0;
    bool observe_good = false;
    int memory = 1;  // history depth the phase structure encodes

    int size() const { return static_cast<int>(states.size()); }
    const std::vector<R>& row(int s, Outcome o) const {
        return kernel[static_cast<size_t>(s)][static_cast<size_t>(o)];
    }
};

using Chain = ChainT<double>;
using ChainQ = ChainT<Rational>;

template <typename R>
R arrival_probability(const ChainT<R>& chain, int s, const R& arrive_good, const R& arrive_bad) {
    return chain.states[static_cast<size_t>(s)].task == Task::Good ? arrive_good : arrive_bad;
}

template <typename R>
Outcome game_outcome_at(const ChainT<R>& chain, int s) {
    return chain.states[static_cast<size_t>(s)].task == Task::Good ? Outcome::GoodGame
                                                                   : Outcome::BadGame;
}

// Unconditional one-period transition matrix, rows indexed by source state.
template <typename R>
std::vector<std::vector<R>> transition_matrix(const ChainT<R>& chain, const R& arrive_good,
                                              const R& arrive_bad) {
    const int n = chain.size();
    std::vector<std::vector<R>> p(static_cast<size_t>(n),
                                  std::vector<R>(static_cast<size_t>(n), num<R>::from_int(0)));
    for (int s = 0; s < n; ++s) {
        const R arrive = arrival_probability(chain, s, arrive_good, arrive_bad);
        const R none = num<R>::from_int(1) - arrive;
        const auto& game_row = chain.row(s, game_outcome_at(chain, s));
        const auto& idle_row = chain.row(s, Outcome::NoGame);
        for (int t = 0; t < n; ++t) {
            p[s][t] = arrive * game_row[static_cast<size_t>(t)] +
                      none * idle_row[static_cast<size_t>(t)];
        }
    }
    return p;
}

template <typename R>
void validate_chain(const ChainT<R>& chain, const Tol<R>& tol = {}) {
    const int n = chain.size();
    if (n == 0) throw ValidationError("chain needs at least one state");
    if (chain.start < 0 || chain.start >= n) throw ValidationError("chain start state out of range");
    if (static_cast<int>(chain.kernel.size()) != n)
        throw ValidationError("chain kernel must have one row set per state");
    const R one = num<R>::from_int(1);
    for (int s = 0; s < n; ++s) {
        for (int o = 0; o < 3; ++o) {
            const auto& row = chain.kernel[static_cast<size_t>(s)][static_cast<size_t>(o)];
            if (static_cast<int>(row.size()) != n)
                throw ValidationError("chain kernel row has wrong length");
            R sum = num<R>::from_int(0);
            for (const auto& v : row) {
                if (v < num<R>::from_int(0)) throw ValidationError("negative transition probability");
                sum += v;
            }
            if (!tol.eq(sum, one)) throw ValidationError("chain kernel row does not sum to 1");
        }
    }
    // Every state must be reachable from the start under some outcome sequence.
    std::vector<bool> seen(static_cast<size_t>(n), false);
    std::vector<int> stack = {chain.start};
    seen[static_cast<size_t>(chain.start)] = true;
    while (!stack.empty()) {
        const int s = stack.back();
        stack.pop_back();
        for (int o = 0; o < 3; ++o) {
            const auto& row = chain.kernel[static_cast<size_t>(s)][static_cast<size_t>(o)];
            for (int t = 0; t < n; ++t) {
                if (row[static_cast<size_t>(t)] > num<R>::from_int(0) && !seen[static_cast<size_t>(t)]) {
                    seen[static_cast<size_t>(t)] = true;
                    stack.push_back(t);
                }
            }
        }
    }
    for (int s = 0; s < n; ++s)
        if (!seen[static_cast<size_t>(s)])
            throw ValidationError("chain state " + chain.states[static_cast<size_t>(s)].name +
                                  " unreachable from start");
}

namespace detail {

// Dense Gaussian elimination; exact for Rational, partial pivoting for double.
template <typename R>
std::vector<R> linear_solve(std::vector<std::vector<R>> a, std::vector<R> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        if constexpr (num<R>::exact) {
            for (int r = col; r < n; ++r)
                if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                    pivot = r;
                    break;
                }
        } else {
            R best = num<R>::from_int(0);
            for (int r = col; r < n; ++r) {
                const R mag = num<R>::abs(a[static_cast<size_t>(r)][static_cast<size_t>(col)]);
                if (pivot < 0 || mag > best) {
                    pivot = r;
                    best = mag;
                }
            }
            if (best == num<R>::from_int(0)) pivot = -1;
        }
        if (pivot < 0) throw InternalError("singular linear system");
        std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(pivot)]);
        std::swap(b[static_cast<size_t>(col)], b[static_cast<size_t>(pivot)]);
        const R lead = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
        for (int r = col + 1; r < n; ++r) {
            const R factor = a[static_cast<size_t>(r)][static_cast<size_t>(col)] / lead;
            if (factor == num<R>::from_int(0)) continue;
            for (int c = col; c < n; ++c)
                a[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    factor * a[static_cast<size_t>(col)][static_cast<size_t>(c)];
            b[static_cast<size_t>(r)] -= factor * b[static_cast<size_t>(col)];
        }
    }
    std::vector<R> x(static_cast<size_t>(n), num<R>::from_int(0));
    for (int r = n - 1; r >= 0; --r) {
        R acc = b[static_cast<size_t>(r)];
        for (int c = r + 1; c < n; ++c)
            acc -= a[static_cast<size_t>(r)][static_cast<size_t>(c)] * x[static_cast<size_t>(c)];
        x[static_cast<size_t>(r)] = acc / a[static_cast<size_t>(r)][static_cast<size_t>(r)];
    }
    return x;
}

// Strongly connected components in reverse topological order (Tarjan).
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& adjacency);

}  // namespace detail

// Stationary distribution of the outcome-augmented chain, started at
// chain.start. Periodic recurrent classes get their time-average occupation
// (the stationary solution); with several reachable recurrent classes the
// result mixes their stationary distributions by absorption probability.
template <typename R>
std::vector<R> steady_state(const ChainT<R>& chain, const R& arrive_good, const R& arrive_bad,
                            const Tol<R>& tol = {}) {
    validate_chain(chain, tol);
    const R zero = num<R>::from_int(0);
    const R one = num<R>::from_int(1);
    if (!(arrive_good > zero && arrive_good <= one) || !(arrive_bad > zero && arrive_bad <= one))
        throw ValidationError("arrival probabilities must lie in (0,1]");

    const int n = chain.size();
    const auto p = transition_matrix(chain, arrive_good, arrive_bad);

    std::vector<std::vector<int>> adjacency(static_cast<size_t>(n));
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            if (p[static_cast<size_t>(s)][static_cast<size_t>(t)] > zero)
                adjacency[static_cast<size_t>(s)].push_back(t);

    const auto components = detail::strongly_connected_components(adjacency);
    std::vector<int> component_of(static_cast<size_t>(n), -1);
    for (size_t c = 0; c < components.size(); ++c)
        for (int s : components[c]) component_of[static_cast<size_t>(s)] = static_cast<int>(c);

    std::vector<bool> terminal(components.size(), true);
    for (int s = 0; s < n; ++s)
        for (int t : adjacency[static_cast<size_t>(s)])
            if (component_of[static_cast<size_t>(s)] != component_of[static_cast<size_t>(t)])
                terminal[static_cast<size_t>(component_of[static_cast<size_t>(s)])] = false;

    std::vector<int> recurrent_classes;
    for (size_t c = 0; c < components.size(); ++c)
        if (terminal[c]) recurrent_classes.push_back(static_cast<int>(c));
    if (recurrent_classes.empty()) throw InternalError("no recurrent class reachable");

    // Absorption probability into each recurrent class from the start state.
    std::vector<R> class_weight(recurrent_classes.size(), zero);
    if (recurrent_classes.size() == 1) {
        class_weight[0] = one;
    } else {
        std::vector<int> transient;
        for (int s = 0; s < n; ++s)
            if (!terminal[static_cast<size_t>(component_of[static_cast<size_t>(s)])])
                transient.push_back(s);
        std::vector<int> transient_index(static_cast<size_t>(n), -1);
        for (size_t i = 0; i < transient.size(); ++i)
            transient_index[static_cast<size_t>(transient[i])] = static_cast<int>(i);

        for (size_t ci = 0; ci < recurrent_classes.size(); ++ci) {
            const int target = recurrent_classes[ci];
            if (component_of[static_cast<size_t>(chain.start)] == target) {
                class_weight[ci] = one;
                continue;
            }
            if (transient_index[static_cast<size_t>(chain.start)] < 0) continue;
            const int m = static_cast<int>(transient.size());
            std::vector<std::vector<R>> a(static_cast<size_t>(m),
                                          std::vector<R>(static_cast<size_t>(m), zero));
            std::vector<R> rhs(static_cast<size_t>(m), zero);
            for (int i = 0; i < m; ++i) {
                const int s = transient[static_cast<size_t>(i)];
                a[static_cast<size_t>(i)][static_cast<size_t>(i)] = one;
                for (int t = 0; t < n; ++t) {
                    const R prob = p[static_cast<size_t>(s)][static_cast<size_t>(t)];
                    if (prob == zero) continue;
                    const int tc = component_of[static_cast<size_t>(t)];
                    if (terminal[static_cast<size_t>(tc)]) {
                        if (tc == target) rhs[static_cast<size_t>(i)] += prob;
                    } else {
                        a[static_cast<size_t>(i)]
                         [static_cast<size_t>(transient_index[static_cast<size_t>(t)])] -= prob;
                    }
                }
            }
            const auto h = detail::linear_solve(a, rhs);
            class_weight[ci] = h[static_cast<size_t>(
                transient_index[static_cast<size_t>(chain.start)])];
        }
    }

    // Stationary distribution inside each recurrent class.
    std::vector<R> pi(static_cast<size_t>(n), zero);
    for (size_t ci = 0; ci < recurrent_classes.size(); ++ci) {
        if (class_weight[ci] == zero) continue;
        const auto& members = components[static_cast<size_t>(recurrent_classes[ci])];
        const int m = static_cast<int>(members.size());
        // (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
        std::vector<std::vector<R>> a(static_cast<size_t>(m),
                                      std::vector<R>(static_cast<size_t>(m), zero));
        std::vector<R> rhs(static_cast<size_t>(m), zero);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    p[static_cast<size_t>(members[static_cast<size_t>(j)])]
                     [static_cast<size_t>(members[static_cast<size_t>(i)])];
            }
            a[static_cast<size_t>(i)][static_cast<size_t>(i)] -= one;
        }
        for (int j = 0; j < m; ++j) a[static_cast<size_t>(m - 1)][static_cast<size_t>(j)] = one;
        rhs[static_cast<size_t>(m - 1)] = one;
        const auto solution = detail::linear_solve(a, rhs);
        for (int i = 0; i < m; ++i)
            pi[static_cast<size_t>(members[static_cast<size_t>(i)])] +=
                class_weight[ci] * solution[static_cast<size_t>(i)];
    }
    return pi;
}

// Residual of the stationarity equation; zero in exact mode.
template <typename R>
R stationarity_residual(const ChainT<R>& chain, const R& arrive_good, const R& arrive_bad,
                        const std::vector<R>& pi) {
    const auto p = transition_matrix(chain, arrive_good, arrive_bad);
    const int n = chain.size();
    R worst = num<R>::from_int(0);
    for (int t = 0; t < n; ++t) {
        R acc = num<R>::from_int(0);
        for (int s = 0; s < n; ++s)
            acc += p[static_cast<size_t>(s)][static_cast<size_t>(t)] * pi[static_cast<size_t>(s)];
        const R gap = num<R>::abs(acc - pi[static_cast<size_t>(t)]);
        if (gap > worst) worst = gap;
    }
    return worst;
}

template <typename R>
struct ChainIncentives {
    R benefit_good{}, benefit_bad{};
    R temptation_good{}, temptation_bad{};
    R social_good{}, social_bad{};
};

template <typename R>
struct ChainSolutionT {
    std::vector<R> steady;                          // per state
    std::vector<std::array<R, 3>> steady_outcome;   // per (state, outcome)
    std::vector<R> values;                          // V(s), full-cooperation benefit stream
    std::vector<R> slacks;                          // delta E[V(next)|s, game] - d_game(s)
    R good_share{}, bad_share{};
    R social_value{};
};

using ChainSolution = ChainSolutionT<double>;

// Solves the value system V = b + delta P V under full on-path cooperation
// and derives per-state incentive slacks and the steady-state social value.
template <typename R>
ChainSolutionT<R> solve_values(const ChainT<R>& chain, const R& arrive_good, const R& arrive_bad,
                               const ChainIncentives<R>& inc, const R& discount,
                               const Tol<R>& tol = {}) {
    const R zero = num<R>::from_int(0);
    const R one = num<R>::from_int(1);
    if (!(discount > zero && discount < one))
        throw ValidationError("discount factor must lie in (0,1)");

    ChainSolutionT<R> out;
    out.steady = steady_state(chain, arrive_good, arrive_bad, tol);
    const int n = chain.size();
    const auto p = transition_matrix(chain, arrive_good, arrive_bad);

    std::vector<std::vector<R>> a(static_cast<size_t>(n),
                                  std::vector<R>(static_cast<size_t>(n), zero));
    std::vector<R> b(static_cast<size_t>(n), zero);
    for (int s = 0; s < n; ++s) {
        const bool good = chain.states[static_cast<size_t>(s)].task == Task::Good;
        b[static_cast<size_t>(s)] = good ? arrive_good * inc.benefit_good
                                         : arrive_bad * inc.benefit_bad;
        for (int t = 0; t < n; ++t)
            a[static_cast<size_t>(s)][static_cast<size_t>(t)] =
                (s == t ? one : zero) - discount * p[static_cast<size_t>(s)][static_cast<size_t>(t)];
    }
    out.values = detail::linear_solve(a, b);

    out.slacks.assign(static_cast<size_t>(n), zero);
    for (int s = 0; s < n; ++s) {
        const bool good = chain.states[static_cast<size_t>(s)].task == Task::Good;
        const auto& row = chain.row(s, good ? Outcome::GoodGame : Outcome::BadGame);
        R continuation = zero;
        for (int t = 0; t < n; ++t)
            continuation += row[static_cast<size_t>(t)] * out.values[static_cast<size_t>(t)];
        out.slacks[static_cast<size_t>(s)] =
            discount * continuation - (good ? inc.temptation_good : inc.temptation_bad);
    }

    out.good_share = zero;
    out.bad_share = zero;
    out.social_value = zero;
    out.steady_outcome.assign(static_cast<size_t>(n), {zero, zero, zero});
    for (int s = 0; s < n; ++s) {
        const bool good = chain.states[static_cast<size_t>(s)].task == Task::Good;
        const R mass = out.steady[static_cast<size_t>(s)];
        (good ? out.good_share : out.bad_share) += mass;
        const R arrive = good ? arrive_good : arrive_bad;
        auto& cell = out.steady_outcome[static_cast<size_t>(s)];
        cell[static_cast<size_t>(good ? Outcome::GoodGame : Outcome::BadGame)] = mass * arrive;
        cell[static_cast<size_t>(Outcome::NoGame)] = mass * (one - arrive);
        out.social_value += mass * arrive * (good ? inc.social_good : inc.social_bad);
    }
    return out;
}

template <typename R>
struct FeasibilityT {
    bool feasible = false;
    R min_slack{};
    int binding_state = -1;
};

// Grim-trigger feasibility of full cooperation: every state's slack must be
// nonnegative. Reports the binding state either way.
template <typename R>
FeasibilityT<R> full_cooperation_feasible(const ChainT<R>& chain, const R& arrive_good,
                                          const R& arrive_bad, const ChainIncentives<R>& inc,
                                          const R& discount, const Tol<R>& tol = {}) {
    const auto solution = solve_values(chain, arrive_good, arrive_bad, inc, discount, tol);
    FeasibilityT<R> out;
    out.feasible = true;
    for (int s = 0; s < chain.size(); ++s) {
        const R slack = solution.slacks[static_cast<size_t>(s)];
        if (out.binding_state < 0 || slack < out.min_slack) {
            out.min_slack = slack;
            out.binding_state = s;
        }
        if (!tol.geq(slack, num<R>::from_int(0))) out.feasible = false;
    }
    return out;
}

// GraphViz rendering of the chain, deterministic for fixed inputs.
std::string to_dot(const Chain& chain);

}  // namespace coopdesign

#endif  // COOPDESIGN_CHAIN_HPP
