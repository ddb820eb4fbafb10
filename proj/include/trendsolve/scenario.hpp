#pragma once

#include <map>
#include <string>
#include <vector>

#include "trendsolve/triplet.hpp"

namespace trendsolve {

enum class Mode { Full, FirstOrder };

std::string mode_name(Mode m);

// A total assignment of triplets to the set's variables.
struct Scenario {
    int id = 0;
    std::vector<Triplet> triplets;  // aligned with ScenarioSet::variables

    bool operator==(const Scenario& o) const { return triplets == o.triplets; }
};

struct ScenarioSet {
    Mode mode = Mode::Full;
    std::vector<std::string> variables;
    std::vector<Scenario> scenarios;

    std::size_t size() const { return scenarios.size(); }
    const Scenario* find(int id) const;
};

// True iff every first derivative is zero and, for full-mode triplets,
// every second derivative is zero as well.
bool is_steady_state(const Scenario& s);

// Keeps scenarios whose triplets match every goal pattern slot-wise.
// Order and ids are preserved. Unknown goal variables throw SemanticError.
ScenarioSet filter_scenarios(const ScenarioSet& ss,
                             const std::map<std::string, TripletPattern>& goals);

// JSON interchange:
//   {"mode": "full" | "first-order",          (optional on input)
//    "variables": ["A", ...],
//    "scenarios": [{"id": 1, "triplets": {"A": "+++", ...},
//                   "steadyState": true}, ...]}
// "steadyState" is emitted only on qualifying scenarios and ignored on
// input. Duplicate scenarios are rejected.
ScenarioSet parse_scenario_json(const std::string& text);
std::string render_scenario_json(const ScenarioSet& ss);

}  // namespace trendsolve
