#include "trendsolve/repair.hpp"

#include <cmath>

#include <json.hpp>

namespace trendsolve {

namespace {

bool trivial_solution(const ScenarioSet& ss) {
    if (ss.scenarios.empty()) return true;
    return ss.scenarios.size() == 1 && is_steady_state(ss.scenarios[0]);
}

TrendModel derive_without(const CorrelationMatrix& c,
                          const std::vector<std::pair<std::size_t, std::size_t>>& removed) {
    TrendModel m;
    for (const std::string& name : c.names)
        m.variables.push_back(Variable{name, Sign::Pos});
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            bool skip = false;
            for (const auto& [a, b] : removed)
                if (a == i && b == j) { skip = true; break; }
            if (skip) continue;
            double value = c.entries[i][j];
            if (value == 0.0) continue;
            m.relations.push_back(TrendRelation{
                value > 0 ? Sign::Pos : Sign::Neg, Sign::Zero,
                c.names[i], c.names[j]});
        }
    return m;
}

}  // namespace

TrendModel derive_relations(const CorrelationMatrix& c) {
    return derive_without(c, {});
}

RepairTrace repair(const CorrelationMatrix& c, const SolveOptions& opts) {
    RepairTrace trace;
    std::vector<std::pair<std::size_t, std::size_t>> removed;

    trace.model = derive_without(c, removed);
    trace.scenarios = solve(trace.model, Mode::Full, opts);

    while (trivial_solution(trace.scenarios)) {
        // Smallest remaining |c_ij|, ties broken by lowest (i, j).
        bool found = false;
        std::size_t best_i = 0, best_j = 0;
        double best_abs = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                double value = c.entries[i][j];
                if (value == 0.0) continue;
                bool gone = false;
                for (const auto& [a, b] : removed)
                    if (a == i && b == j) { gone = true; break; }
                if (gone) continue;
                double abs = std::fabs(value);
                if (!found || abs < best_abs) {
                    found = true;
                    best_i = i;
                    best_j = j;
                    best_abs = abs;
                }
            }
        if (!found) {
            trace.exhausted = true;
            break;
        }
        removed.emplace_back(best_i, best_j);
        trace.model = derive_without(c, removed);
        trace.scenarios = solve(trace.model, Mode::Full, opts);
        trace.steps.push_back(RepairStep{c.names[best_i], c.names[best_j],
                                         c.entries[best_i][best_j],
                                         trace.scenarios.size()});
    }
    return trace;
}

std::string render_trace_json(const RepairTrace& trace) {
    nlohmann::ordered_json doc;
    auto steps = nlohmann::ordered_json::array();
    for (const RepairStep& step : trace.steps) {
        nlohmann::ordered_json s;
        s["pair"] = {step.a, step.b};
        s["value"] = step.value;
        s["scenarios"] = step.scenario_count;
        steps.push_back(std::move(s));
    }
    doc["steps"] = std::move(steps);
    doc["exhausted"] = trace.exhausted;
    return doc.dump() + "\n";
}

}  // namespace trendsolve
