#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using std::filesystem::path;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

path temp_dir() {
    static path dir = [] {
        path d = std::filesystem::temp_directory_path() / "trendsolve_cli_test";
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

// Runs the CLI through the shell; arguments must already be quoted.
RunResult run(const std::string& args, const std::string& env = "") {
    path out = temp_dir() / "stdout.txt";
    path err = temp_dir() / "stderr.txt";
    std::string cmd = env + " " + std::string(TRENDSOLVE_CLI) + " " + args +
                      " > " + out.string() + " 2> " + err.string();
    int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WEXITSTATUS(status);
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
}

std::string fixture(const std::string& name) {
    return (path(TRENDSOLVE_FIXTURES) / name).string();
}

path write_temp(const std::string& name, const std::string& content) {
    path p = temp_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

}  // namespace

TEST_CASE("solve renders the investment table") {
    RunResult r = run("solve " + fixture("cim.tm"));
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "id  REP  UND  AGE  TA   MAR  LIS  QUA  BOO  ROA  PRI\n"
          " 1  +++  +--  +++  +++  +++  +++  +++  +++  +--  +++\n"
          " 2  ++-  +-+  ++-  ++-  ++-  ++-  ++-  ++-  +-+  ++-\n"
          " 3  +0+  +0-  +0+  +0+  +0+  +0+  +0+  +0+  +0-  +0+\n"
          " 4  +00  +00  +00  +00  +00  +00  +00  +00  +00  +00  steady\n"
          " 5  +0-  +0+  +0-  +0-  +0-  +0-  +0-  +0-  +0+  +0-\n"
          " 6  +-+  ++-  +-+  +-+  +-+  +-+  +-+  +-+  ++-  +-+\n"
          " 7  +--  +++  +--  +--  +--  +--  +--  +--  +++  +--\n");
}

TEST_CASE("solve emits scenario json") {
    RunResult r = run("solve " + fixture("cim.tm") + " --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"mode\": \"full\"") != std::string::npos);
    CHECK(r.out.find("\"steadyState\": true") != std::string::npos);
}

TEST_CASE("first-order solve renders wildcards") {
    RunResult r = run("solve " + fixture("im.tm") + " --first-order");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("++*") != std::string::npos);
    CHECK(r.out.find("+-*") != std::string::npos);
}

TEST_CASE("missing input is an io error") {
    RunResult r = run("solve no_such_file.tm");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("no_such_file.tm") != std::string::npos);
}

TEST_CASE("parse failures report position and exit 2") {
    path bad = write_temp("bad.tm", "var X +\nrel SUP X X\n");
    RunResult r = run("solve " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("2:") != std::string::npos);  // line 2
}

TEST_CASE("graph on a fixture emits dot") {
    RunResult r = run("graph --scenarios " + fixture("im14.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("digraph {", 0) == 0);
    CHECK(r.out.find("6 -> 7;") != std::string::npos);
    CHECK(r.out.find("REP=++-") != std::string::npos);
}

TEST_CASE("graph json on a solved model") {
    RunResult r = run("graph " + fixture("cim.tm") + " --format json");
    CHECK(r.exit_code == 0);
    for (int id = 1; id <= 7; ++id)
        CHECK(r.out.find(std::to_string(id)) != std::string::npos);
}

TEST_CASE("graph of an empty scenario set") {
    path empty = write_temp("empty_set.json",
                            R"({"variables":["A"],"scenarios":[]})");
    RunResult r = run("graph --scenarios " + empty.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "digraph {}\n");
}

TEST_CASE("graph needs exactly one input") {
    RunResult r = run("graph");
    CHECK(r.exit_code == 3);
    RunResult both = run("graph " + fixture("cim.tm") + " --scenarios " +
                         fixture("im14.json"));
    CHECK(both.exit_code == 3);
}

TEST_CASE("reach answers yes and no") {
    std::string scen = " --scenarios " + fixture("im14.json");
    CHECK(run("reach" + scen + " --from 6 --to 1").out == "no\n");
    CHECK(run("reach" + scen + " --from 6 --to 6").out == "yes\n");
    CHECK(run("reach" + scen + " --from 6 --to 7").out == "yes\n");
    CHECK(run("reach" + scen + " --from 6 --to 1").exit_code == 0);
    RunResult unknown = run("reach" + scen + " --from 99 --to 1");
    CHECK(unknown.exit_code == 3);
    RunResult json = run("reach" + scen + " --from 6 --to 1 --format json");
    CHECK(json.out == "{\"from\":6,\"to\":1,\"reachable\":false}\n");
}

TEST_CASE("translate writes the model fragment") {
    RunResult r = run("translate " + fixture("rrm.ode"));
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "var X +\nvar Y +\nvar W +\nvar Z1 +\nvar Z2 +\n"
          "eq D(X) + X*Y = 0\n"
          "eq D(Y) + Y*Y + Y*Z1 + Y*Z2 = X*Y\n"
          "eq D(W) + X*Y + W = X*Y\n"
          "eq D(Z1) = Y*Y + Y*Z1 + W\n"
          "eq D(Z2) + W = W + Y*Z2\n");

    path decay = write_temp("decay.ode", "param k pos\node X = -k * X\n");
    CHECK(run("translate " + decay.string()).out == "var X +\neq D(X) + X = 0\n");
}

TEST_CASE("repair prints the model and a trace") {
    RunResult r = run("repair " + fixture("repair3.csv"));
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "var A +\nvar B +\nvar C +\nrel SUP A B\nrel SUP A C\n\n"
          "{\"steps\":[{\"pair\":[\"B\",\"C\"],\"value\":-0.1,\"scenarios\":9}],"
          "\"exhausted\":false}\n");

    path consistent = write_temp("ok.csv", "A,B\n1,0.9\n0.9,1\n");
    RunResult ok = run("repair " + consistent.string());
    CHECK(ok.out.find("\"steps\":[]") != std::string::npos);

    path empty = write_temp("empty.csv", "");
    RunResult none = run("repair " + empty.string());
    CHECK(none.exit_code == 0);
    CHECK(none.out.find("\"exhausted\":true") != std::string::npos);
}

TEST_CASE("check accepts the bundled fixtures") {
    RunResult r = run("check " + fixture("im.tm") + " --scenarios " +
                      fixture("im14.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("all 14 scenarios satisfy the model") != std::string::npos);
}

TEST_CASE("check reports violations with the offending constraint") {
    // flip D(Z1) in fixture row 1 to -, violating the promoter equation
    std::string doc = slurp(fixture("im14.json"));
    const std::string needle = "\"Z1\": \"++-\"";
    std::size_t at = doc.find(needle);
    REQUIRE(at != std::string::npos);
    doc.replace(at, needle.size(), "\"Z1\": \"+--\"");
    path broken = write_temp("broken14.json", doc);
    RunResult r = run("check " + fixture("im.tm") + " --scenarios " +
                      broken.string());
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("violates eq D(Z1) = Y*Y + Y*Z1 + W") != std::string::npos);
}

TEST_CASE("check passes vacuously on an empty fixture") {
    path empty = write_temp("empty14.json",
                            R"({"variables":["REP","ROA","X","Y","W","Z1","Z2",)"
                            R"("UND","AGE","TA","MAR","LIS","QUA","BOO","PRI"],)"
                            R"("scenarios":[]})");
    RunResult r = run("check " + fixture("im.tm") + " --scenarios " +
                      empty.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("all 0 scenarios") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across runs and worker counts") {
    std::string args = "solve " + fixture("im.tm") + " --format json";
    RunResult one = run(args, "TRENDSOLVE_THREADS=1");
    RunResult four = run(args, "TRENDSOLVE_THREADS=4");
    RunResult again = run(args);
    CHECK(one.exit_code == 0);
    CHECK(one.out == four.out);
    CHECK(one.out == again.out);

    std::string graph_args = "graph --scenarios " + fixture("im14.json");
    CHECK(run(graph_args, "TRENDSOLVE_THREADS=1").out ==
          run(graph_args, "TRENDSOLVE_THREADS=4").out);
}

TEST_CASE("output lands in a file with -o") {
    path out = temp_dir() / "seven.json";
    RunResult r = run("solve " + fixture("cim.tm") + " --format json -o " +
                      out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(out).find("\"scenarios\"") != std::string::npos);
}
