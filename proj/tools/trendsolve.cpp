#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trendsolve/error.hpp"
#include "trendsolve/graph.hpp"
#include "trendsolve/model_io.hpp"
#include "trendsolve/ode.hpp"
#include "trendsolve/repair.hpp"
#include "trendsolve/scenario.hpp"
#include "trendsolve/solve.hpp"

namespace {

using namespace trendsolve;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitParse = 2;
constexpr int kExitSemantic = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    if (in.bad()) throw IoError("cannot read '" + path + "'");
    return out.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + out_path + "'");
    out << content;
    if (!out) throw IoError("cannot write '" + out_path + "'");
}

SolveOptions solve_options() {
    SolveOptions opts;
    if (const char* env = std::getenv("TRENDSOLVE_THREADS")) {
        char* end = nullptr;
        long value = std::strtol(env, &end, 10);
        if (end && *end == '\0' && value > 0) opts.threads = static_cast<int>(value);
    }
    return opts;
}

std::string render_table(const ScenarioSet& ss) {
    std::size_t id_width = 2;
    for (const Scenario& s : ss.scenarios)
        id_width = std::max(id_width, std::to_string(s.id).size());

    std::vector<std::size_t> widths;
    for (const std::string& name : ss.variables)
        widths.push_back(std::max<std::size_t>(3, name.size()));

    auto rstrip = [](std::string line) {
        while (!line.empty() && line.back() == ' ') line.pop_back();
        return line;
    };

    std::string out;
    {
        std::string line = std::string(id_width - 2, ' ') + "id";
        for (std::size_t v = 0; v < ss.variables.size(); ++v) {
            line += "  " + ss.variables[v];
            line += std::string(widths[v] - ss.variables[v].size(), ' ');
        }
        out += rstrip(line) + "\n";
    }
    for (const Scenario& s : ss.scenarios) {
        std::string id = std::to_string(s.id);
        std::string line = std::string(id_width - id.size(), ' ') + id;
        for (std::size_t v = 0; v < ss.variables.size(); ++v) {
            std::string cell = s.triplets[v].str();
            line += "  " + cell + std::string(widths[v] - cell.size(), ' ');
        }
        line = rstrip(line);
        if (is_steady_state(s)) line += "  steady";
        out += line + "\n";
    }
    return out;
}

// Reorders fixture scenarios to the model's variable order; the variable
// sets must coincide.
ScenarioSet align_to_model(const ScenarioSet& ss, const TrendModel& model) {
    std::vector<std::size_t> from(model.variables.size());
    for (std::size_t i = 0; i < model.variables.size(); ++i) {
        const std::string& name = model.variables[i].name;
        auto it = std::find(ss.variables.begin(), ss.variables.end(), name);
        if (it == ss.variables.end())
            throw SemanticError("scenario fixture is missing model variable '" +
                                name + "'");
        from[i] = static_cast<std::size_t>(it - ss.variables.begin());
    }
    for (const std::string& name : ss.variables)
        if (!model.index_of(name))
            throw SemanticError("scenario fixture has unknown variable '" + name +
                                "'");
    ScenarioSet out;
    out.mode = ss.mode;
    for (const Variable& v : model.variables) out.variables.push_back(v.name);
    for (const Scenario& s : ss.scenarios) {
        Scenario r;
        r.id = s.id;
        for (std::size_t i = 0; i < from.size(); ++i)
            r.triplets.push_back(s.triplets[from[i]]);
        out.scenarios.push_back(std::move(r));
    }
    return out;
}

struct CommonOpts {
    std::string format;
    std::string out_path;
};

int cmd_solve(const std::string& model_path, bool first_order,
              const CommonOpts& common) {
    TrendModel model = parse_model(read_file(model_path));
    Mode mode = first_order ? Mode::FirstOrder : Mode::Full;
    ScenarioSet ss = solve(model, mode, solve_options());
    write_output(common.out_path, common.format == "json" ? render_scenario_json(ss)
                                                          : render_table(ss));
    return kExitOk;
}

int cmd_graph(const std::string& model_path, const std::string& scenario_path,
              const CommonOpts& common) {
    ScenarioSet ss;
    if (!scenario_path.empty()) {
        ss = parse_scenario_json(read_file(scenario_path));
    } else {
        TrendModel model = parse_model(read_file(model_path));
        ss = solve(model, Mode::Full, solve_options());
    }
    TransitionGraph g = build_graph(ss, solve_options());
    write_output(common.out_path,
                 common.format == "json" ? export_graph_json(g) : export_dot(g));
    return kExitOk;
}

int cmd_reach(const std::string& scenario_path, int from, int to,
              const CommonOpts& common) {
    ScenarioSet ss = parse_scenario_json(read_file(scenario_path));
    TransitionGraph g = build_graph(ss, solve_options());
    bool ok = reachable(g, from, to);
    if (common.format == "json") {
        nlohmann::ordered_json doc;
        doc["from"] = from;
        doc["to"] = to;
        doc["reachable"] = ok;
        write_output(common.out_path, doc.dump() + "\n");
    } else {
        write_output(common.out_path, ok ? "yes\n" : "no\n");
    }
    return kExitOk;
}

int cmd_translate(const std::string& ode_path, const CommonOpts& common) {
    TranslationReport report = translate(parse_ode(read_file(ode_path)));
    std::string fragment = render_translation(report);
    if (common.format == "json") {
        nlohmann::ordered_json doc;
        doc["model"] = fragment;
        write_output(common.out_path, doc.dump() + "\n");
    } else {
        write_output(common.out_path, fragment);
    }
    return kExitOk;
}

int cmd_repair(const std::string& csv_path, const CommonOpts& common) {
    CorrelationMatrix c = parse_correlation_csv(read_file(csv_path));
    RepairTrace trace = repair(c, solve_options());
    std::string model_text = render_model(trace.model);
    if (common.format == "json") {
        nlohmann::ordered_json doc;
        doc["model"] = model_text;
        auto inner = nlohmann::json::parse(render_trace_json(trace));
        doc["steps"] = inner.at("steps");
        doc["exhausted"] = inner.at("exhausted");
        write_output(common.out_path, doc.dump(2) + "\n");
    } else {
        write_output(common.out_path, model_text + "\n" + render_trace_json(trace));
    }
    return kExitOk;
}

int cmd_check(const std::string& model_path, const std::string& scenario_path,
              const CommonOpts& common) {
    TrendModel model = parse_model(read_file(model_path));
    ScenarioSet ss = align_to_model(parse_scenario_json(read_file(scenario_path)),
                                    model);
    CompiledModel cm = compile(model, ss.mode);

    std::size_t failed = 0;
    std::string text;
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const Scenario& s : ss.scenarios) {
        std::vector<std::string> violations = scenario_violations(cm, s);
        if (!violations.empty()) ++failed;
        if (common.format == "json") {
            nlohmann::ordered_json item;
            item["id"] = s.id;
            item["violations"] = violations;
            items.push_back(std::move(item));
        } else {
            if (violations.empty()) {
                text += "scenario " + std::to_string(s.id) + ": ok\n";
            } else {
                for (const std::string& v : violations)
                    text += "scenario " + std::to_string(s.id) + ": violates " + v +
                            "\n";
            }
        }
    }
    if (common.format == "json") {
        nlohmann::ordered_json doc;
        doc["ok"] = failed == 0;
        doc["scenarios"] = std::move(items);
        write_output(common.out_path, doc.dump(2) + "\n");
    } else {
        if (failed == 0)
            text += "all " + std::to_string(ss.scenarios.size()) +
                    " scenarios satisfy the model\n";
        else
            text += std::to_string(failed) + " of " +
                    std::to_string(ss.scenarios.size()) +
                    " scenarios violate the model\n";
        write_output(common.out_path, text);
    }
    return failed == 0 ? kExitOk : kExitSemantic;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trend scenario solver and transitional graph tool"};
    app.require_subcommand(1);

    std::string model_path, scenario_path, ode_path, csv_path;
    bool first_order = false;
    int from = 0, to = 0;
    CommonOpts common;

    auto add_common = [&](CLI::App* cmd, std::vector<std::string> formats) {
        cmd->add_option("--format", common.format, "output format")
            ->check(CLI::IsMember(formats));
        cmd->add_option("-o,--out", common.out_path, "write to a file instead of stdout");
    };

    CLI::App* solve_cmd = app.add_subcommand("solve", "enumerate consistent scenarios");
    solve_cmd->add_option("model", model_path, "trend model file")->required();
    solve_cmd->add_flag("--first-order", first_order, "ignore second derivatives");
    add_common(solve_cmd, {"table", "json"});

    CLI::App* graph_cmd = app.add_subcommand("graph", "build the transitional graph");
    graph_cmd->add_option("model", model_path, "trend model file (solved in full mode)");
    graph_cmd->add_option("--scenarios", scenario_path, "scenario fixture JSON");
    add_common(graph_cmd, {"dot", "json"});

    CLI::App* reach_cmd = app.add_subcommand("reach", "scenario reachability query");
    reach_cmd->add_option("--scenarios", scenario_path, "scenario fixture JSON")
        ->required();
    reach_cmd->add_option("--from", from, "source scenario id")->required();
    reach_cmd->add_option("--to", to, "target scenario id")->required();
    add_common(reach_cmd, {"text", "json"});

    CLI::App* translate_cmd =
        app.add_subcommand("translate", "turn an ODE system into trend equations");
    translate_cmd->add_option("system", ode_path, "ODE system file")->required();
    add_common(translate_cmd, {"text", "json"});

    CLI::App* repair_cmd =
        app.add_subcommand("repair", "derive a model from a correlation matrix");
    repair_cmd->add_option("matrix", csv_path, "correlation matrix CSV")->required();
    add_common(repair_cmd, {"text", "json"});

    CLI::App* check_cmd =
        app.add_subcommand("check", "verify fixture scenarios against a model");
    check_cmd->add_option("model", model_path, "trend model file")->required();
    check_cmd->add_option("--scenarios", scenario_path, "scenario fixture JSON")
        ->required();
    add_common(check_cmd, {"text", "json"});

    CLI11_PARSE(app, argc, argv);

    if (common.format.empty()) {
        if (app.got_subcommand(graph_cmd)) common.format = "dot";
        else if (app.got_subcommand(solve_cmd)) common.format = "table";
        else common.format = "text";
    }

    try {
        if (app.got_subcommand(solve_cmd))
            return cmd_solve(model_path, first_order, common);
        if (app.got_subcommand(graph_cmd)) {
            if (scenario_path.empty() == model_path.empty())
                throw SemanticError(
                    "graph needs either a model file or --scenarios, not both");
            return cmd_graph(model_path, scenario_path, common);
        }
        if (app.got_subcommand(reach_cmd)) return cmd_reach(scenario_path, from, to, common);
        if (app.got_subcommand(translate_cmd)) return cmd_translate(ode_path, common);
        if (app.got_subcommand(repair_cmd)) return cmd_repair(csv_path, common);
        if (app.got_subcommand(check_cmd))
            return cmd_check(model_path, scenario_path, common);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
    return kExitOk;
}
