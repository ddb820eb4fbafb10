#include "trendsolve/scenario.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "trendsolve/error.hpp"

namespace trendsolve {

namespace {

using ordered_json = nlohmann::ordered_json;

ParseError json_error(const nlohmann::json::exception& e) {
    return ParseError(1, 1, e.what());
}

}  // namespace

std::string mode_name(Mode m) {
    return m == Mode::Full ? "full" : "first-order";
}

const Scenario* ScenarioSet::find(int id) const {
    for (const Scenario& s : scenarios)
        if (s.id == id) return &s;
    return nullptr;
}

bool is_steady_state(const Scenario& s) {
    for (const Triplet& t : s.triplets) {
        if (t.d1 != Sign::Zero) return false;
        if (!t.d2.is_full() && t.d2 != SignSet(Sign::Zero)) return false;
    }
    return true;
}

ScenarioSet filter_scenarios(const ScenarioSet& ss,
                             const std::map<std::string, TripletPattern>& goals) {
    std::vector<std::pair<std::size_t, const TripletPattern*>> resolved;
    for (const auto& [name, pattern] : goals) {
        auto it = std::find(ss.variables.begin(), ss.variables.end(), name);
        if (it == ss.variables.end())
            throw SemanticError("unknown goal variable '" + name + "'");
        resolved.emplace_back(it - ss.variables.begin(), &pattern);
    }
    ScenarioSet out;
    out.mode = ss.mode;
    out.variables = ss.variables;
    for (const Scenario& s : ss.scenarios) {
        bool keep = true;
        for (const auto& [idx, pattern] : resolved)
            if (!pattern->matches(s.triplets[idx])) { keep = false; break; }
        if (keep) out.scenarios.push_back(s);
    }
    return out;
}

ScenarioSet parse_scenario_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Recover a line/column from the byte offset.
        int line = 1, col = 1;
        for (std::size_t i = 0; i < text.size() && i + 1 < e.byte; ++i) {
            if (text[i] == '\n') { ++line; col = 1; } else ++col;
        }
        throw ParseError(line, col, "invalid JSON: " + std::string(e.what()));
    }

    try {
        ScenarioSet ss;
        if (doc.contains("mode")) {
            std::string m = doc.at("mode").get<std::string>();
            if (m == "full") ss.mode = Mode::Full;
            else if (m == "first-order") ss.mode = Mode::FirstOrder;
            else throw ParseError(1, 1, "unknown mode '" + m + "'");
        }
        std::set<std::string> seen;
        for (const auto& v : doc.at("variables")) {
            std::string name = v.get<std::string>();
            if (!seen.insert(name).second)
                throw ParseError(1, 1, "duplicate variable '" + name + "'");
            ss.variables.push_back(std::move(name));
        }
        for (const auto& item : doc.at("scenarios")) {
            Scenario s;
            s.id = item.at("id").get<int>();
            const auto& triplets = item.at("triplets");
            for (const std::string& name : ss.variables) {
                if (!triplets.contains(name))
                    throw ParseError(1, 1, "scenario " + std::to_string(s.id) +
                                               " is missing variable '" + name + "'");
                std::string symbols = triplets.at(name).get<std::string>();
                auto t = parse_triplet(symbols);
                if (!t)
                    throw ParseError(1, 1, "bad triplet '" + symbols + "' for '" +
                                               name + "'");
                s.triplets.push_back(*t);
            }
            ss.scenarios.push_back(std::move(s));
        }
        for (std::size_t i = 0; i < ss.scenarios.size(); ++i)
            for (std::size_t j = i + 1; j < ss.scenarios.size(); ++j) {
                if (ss.scenarios[i].triplets == ss.scenarios[j].triplets)
                    throw ParseError(1, 1, "duplicate scenarios " +
                                               std::to_string(ss.scenarios[i].id) + " and " +
                                               std::to_string(ss.scenarios[j].id));
                if (ss.scenarios[i].id == ss.scenarios[j].id)
                    throw ParseError(1, 1, "duplicate scenario id " +
                                               std::to_string(ss.scenarios[i].id));
            }
        return ss;
    } catch (const nlohmann::json::exception& e) {
        throw json_error(e);
    }
}

std::string render_scenario_json(const ScenarioSet& ss) {
    ordered_json doc;
    doc["mode"] = mode_name(ss.mode);
    doc["variables"] = ss.variables;
    ordered_json scenarios = ordered_json::array();
    for (const Scenario& s : ss.scenarios) {
        ordered_json item;
        item["id"] = s.id;
        ordered_json triplets;
        for (std::size_t i = 0; i < ss.variables.size(); ++i)
            triplets[ss.variables[i]] = s.triplets[i].str();
        item["triplets"] = std::move(triplets);
        if (is_steady_state(s)) item["steadyState"] = true;
        scenarios.push_back(std::move(item));
    }
    doc["scenarios"] = std::move(scenarios);
    return doc.dump(2) + "\n";
}

}  // namespace trendsolve
