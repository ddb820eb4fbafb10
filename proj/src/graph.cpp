#include "trendsolve/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "trendsolve/error.hpp"

namespace trendsolve {

namespace {

std::size_t node_index(const TransitionGraph& g, int id, const char* what) {
    for (std::size_t i = 0; i < g.nodes.scenarios.size(); ++i)
        if (g.nodes.scenarios[i].id == id) return i;
    throw SemanticError(std::string("unknown ") + what + " scenario id " +
                        std::to_string(id));
}

}  // namespace

TransitionGraph build_graph(const ScenarioSet& ss, const SolveOptions& opts) {
    for (const Scenario& s : ss.scenarios)
        for (const Triplet& t : s.triplets) {
            if (t.value != Sign::Pos)
                throw SemanticError("transitional graphs require positive-valued "
                                    "scenarios, got triplet " + t.str());
            if (!t.d2.is_singleton())
                throw SemanticError("transitional graphs require definite second "
                                    "derivatives, got triplet " + t.str());
        }

    TransitionGraph g;
    g.nodes = ss;

    std::size_t n = ss.scenarios.size();
    std::size_t vars = ss.variables.size();
    std::vector<std::vector<std::pair<int, int>>> rows(n);

#ifdef _OPENMP
    int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#else
    (void)opts;
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        const Scenario& from = ss.scenarios[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (static_cast<std::size_t>(i) == j) continue;
            const Scenario& to = ss.scenarios[j];
            bool legal = true;
            for (std::size_t v = 0; v < vars && legal; ++v)
                legal = transition_allowed(from.triplets[v], to.triplets[v]);
            if (legal) rows[i].emplace_back(from.id, to.id);
        }
    }
    for (const auto& row : rows)
        g.edges.insert(g.edges.end(), row.begin(), row.end());
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

bool reachable(const TransitionGraph& g, int from, int to) {
    node_index(g, from, "source");
    node_index(g, to, "target");
    if (from == to) return true;

    std::map<int, std::vector<int>> adjacency;
    for (const auto& [a, b] : g.edges) adjacency[a].push_back(b);

    std::deque<int> queue{from};
    std::vector<int> seen{from};
    while (!queue.empty()) {
        int node = queue.front();
        queue.pop_front();
        for (int next : adjacency[node]) {
            if (next == to) return true;
            if (std::find(seen.begin(), seen.end(), next) == seen.end()) {
                seen.push_back(next);
                queue.push_back(next);
            }
        }
    }
    return false;
}

std::string export_dot(const TransitionGraph& g) {
    if (g.nodes.scenarios.empty() && g.edges.empty()) return "digraph {}\n";

    std::vector<const Scenario*> ordered;
    for (const Scenario& s : g.nodes.scenarios) ordered.push_back(&s);
    std::sort(ordered.begin(), ordered.end(),
              [](const Scenario* a, const Scenario* b) { return a->id < b->id; });

    std::string out = "digraph {\n";
    for (const Scenario* s : ordered) {
        out += "  " + std::to_string(s->id) + " [label=\"" + std::to_string(s->id);
        for (std::size_t v = 0; v < g.nodes.variables.size(); ++v)
            out += "\\n" + g.nodes.variables[v] + "=" + s->triplets[v].str();
        out += "\"];\n";
    }
    for (const auto& [a, b] : g.edges)
        out += "  " + std::to_string(a) + " -> " + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
}

std::string export_graph_json(const TransitionGraph& g) {
    nlohmann::ordered_json doc;
    std::vector<int> ids;
    for (const Scenario& s : g.nodes.scenarios) ids.push_back(s.id);
    std::sort(ids.begin(), ids.end());
    doc["nodes"] = ids;
    auto edges = nlohmann::ordered_json::array();
    for (const auto& [a, b] : g.edges) edges.push_back({a, b});
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

}  // namespace trendsolve
