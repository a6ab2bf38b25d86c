#include "coopdesign/chain.hpp"

#include <cstdio>

namespace coopdesign {
namespace detail {

namespace {

struct TarjanState {
    const std::vector<std::vector<int>>& adjacency;
    std::vector<int> index, lowlink;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    std::vector<std::vector<int>> components;
    int counter = 0;

    explicit TarjanState(const std::vector<std::vector<int>>& adj)
        : adjacency(adj),
          index(adj.size(), -1),
          lowlink(adj.size(), -1),
          on_stack(adj.size(), false) {}

    void visit(int v) {
        // Iterative DFS; frames carry the next edge index to resume at.
        std::vector<std::pair<int, size_t>> frames = {{v, 0}};
        while (!frames.empty()) {
            auto& [node, edge] = frames.back();
            if (edge == 0) {
                index[static_cast<size_t>(node)] = lowlink[static_cast<size_t>(node)] = counter++;
                stack.push_back(node);
                on_stack[static_cast<size_t>(node)] = true;
            }
            bool descended = false;
            while (edge < adjacency[static_cast<size_t>(node)].size()) {
                const int next = adjacency[static_cast<size_t>(node)][edge];
                ++edge;
                if (index[static_cast<size_t>(next)] < 0) {
                    frames.emplace_back(next, 0);
                    descended = true;
                    break;
                }
                if (on_stack[static_cast<size_t>(next)])
                    lowlink[static_cast<size_t>(node)] = std::min(
                        lowlink[static_cast<size_t>(node)], index[static_cast<size_t>(next)]);
            }
            if (descended) continue;
            if (lowlink[static_cast<size_t>(node)] == index[static_cast<size_t>(node)]) {
                std::vector<int> component;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<size_t>(w)] = false;
                    component.push_back(w);
                } while (w != node);
                components.push_back(std::move(component));
            }
            frames.pop_back();
            if (!frames.empty()) {
                const int parent = frames.back().first;
                lowlink[static_cast<size_t>(parent)] = std::min(
                    lowlink[static_cast<size_t>(parent)], lowlink[static_cast<size_t>(node)]);
            }
        }
    }
};

}  // namespace

std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& adjacency) {
    TarjanState tarjan(adjacency);
    for (size_t v = 0; v < adjacency.size(); ++v)
        if (tarjan.index[v] < 0) tarjan.visit(static_cast<int>(v));
    return tarjan.components;
}

}  // namespace detail

namespace {

std::string format_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", p);
    return buf;
}

const char* outcome_tag(Outcome o) {
    switch (o) {
        case Outcome::GoodGame: return "g=G";
        case Outcome::BadGame: return "g=B";
        case Outcome::NoGame: return "g=none";
    }
    return "";
}

}  // namespace

std::string to_dot(const Chain& chain) {
    std::string out = "digraph reactive_assignment {\n  rankdir=LR;\n";
    for (int s = 0; s < chain.size(); ++s) {
        const auto& st = chain.states[static_cast<size_t>(s)];
        out += "  s" + std::to_string(s) + " [label=\"" + st.name + "\\n" +
               (st.task == Task::Good ? "tG" : "tB") + "\"";
        if (s == chain.start) out += " shape=doublecircle";
        out += "];\n";
    }
    for (int s = 0; s < chain.size(); ++s) {
        const bool conditioned =
            chain.row(s, Outcome::GoodGame) != chain.row(s, Outcome::NoGame) ||
            chain.row(s, Outcome::BadGame) != chain.row(s, Outcome::NoGame);
        for (int o = 0; o < 3; ++o) {
            const auto& row = chain.kernel[static_cast<size_t>(s)][static_cast<size_t>(o)];
            // Unconditioned states print a single edge set from the no-game row.
            if (!conditioned && o != static_cast<int>(Outcome::NoGame)) continue;
            for (int t = 0; t < chain.size(); ++t) {
                const double p = row[static_cast<size_t>(t)];
                if (p <= 0.0) continue;
                out += "  s" + std::to_string(s) + " -> s" + std::to_string(t) + " [label=\"";
                if (conditioned) {
                    out += outcome_tag(static_cast<Outcome>(o));
                    if (p < 1.0) out += ", p=" + format_probability(p);
                } else {
                    out += "p=" + format_probability(p);
                }
                out += "\"];\n";
            }
        }
    }
    out += "}\n";
    return out;
}

}  // namespace coopdesign
