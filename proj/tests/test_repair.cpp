#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "trendsolve/model_io.hpp"
#include "trendsolve/repair.hpp"
#include "trendsolve/solve.hpp"

using namespace trendsolve;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(TRENDSOLVE_FIXTURES) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

CorrelationMatrix matrix(const std::string& csv) {
    return parse_correlation_csv(csv);
}

CorrelationMatrix random_matrix(std::mt19937& rng, std::size_t n) {
    CorrelationMatrix c;
    for (std::size_t i = 0; i < n; ++i)
        c.names.push_back("V" + std::to_string(i));
    c.entries.assign(n, std::vector<double>(n, 1.0));
    std::uniform_int_distribution<int> tenth(-9, 9);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            c.entries[i][j] = c.entries[j][i] = tenth(rng) / 10.0;
    return c;
}

}  // namespace

TEST_CASE("relation derivation by coefficient sign") {
    CorrelationMatrix pos = matrix("A,B\n1,0.8\n0.8,1\n");
    TrendModel m = derive_relations(pos);
    REQUIRE(m.relations.size() == 1);
    CHECK(m.relations[0] == TrendRelation{Sign::Pos, Sign::Zero, "A", "B"});

    CorrelationMatrix neg = matrix("A,B\n1,-0.3\n-0.3,1\n");
    CHECK(derive_relations(neg).relations[0] ==
          TrendRelation{Sign::Neg, Sign::Zero, "A", "B"});

    CorrelationMatrix zero = matrix("A,B\n1,0\n0,1\n");
    CHECK(derive_relations(zero).relations.empty());
}

TEST_CASE("diagonal entries are ignored") {
    CorrelationMatrix c = matrix("A,B\n0.4,0\n0,-7\n");
    CHECK(derive_relations(c).relations.empty());
}

TEST_CASE("contradictory three-variable matrix repairs in one step") {
    CorrelationMatrix c = parse_correlation_csv(fixture("repair3.csv"));

    // before removal the lockstep cycle forces the steady state alone
    ScenarioSet before = solve(derive_relations(c), Mode::Full);
    REQUIRE(before.size() == 1);
    CHECK(is_steady_state(before.scenarios[0]));

    RepairTrace trace = repair(c);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].a == "B");
    CHECK(trace.steps[0].b == "C");
    CHECK(trace.steps[0].value == doctest::Approx(-0.1));
    CHECK(trace.steps[0].scenario_count == 9);
    CHECK_FALSE(trace.exhausted);
    CHECK(trace.scenarios.size() == 9);
    CHECK(trace.model.relations.size() == 2);
}

TEST_CASE("consistent matrices repair with zero steps") {
    RepairTrace trace = repair(matrix("A,B\n1,0.9\n0.9,1\n"));
    CHECK(trace.steps.empty());
    CHECK_FALSE(trace.exhausted);
    CHECK(trace.scenarios.size() == 9);
}

TEST_CASE("all-zero off-diagonal yields the free model") {
    RepairTrace trace = repair(matrix("A,B,C\n1,0,0\n0,1,0\n0,0,1\n"));
    CHECK(trace.steps.empty());
    CHECK(trace.model.relations.empty());
    CHECK(trace.scenarios.size() == 729);
}

TEST_CASE("empty matrix exhausts immediately") {
    RepairTrace trace = repair(CorrelationMatrix{});
    CHECK(trace.steps.empty());
    CHECK(trace.exhausted);
    CHECK(render_trace_json(trace) == "{\"steps\":[],\"exhausted\":true}\n");
}

TEST_CASE("trace json layout") {
    RepairTrace trace = repair(parse_correlation_csv(fixture("repair3.csv")));
    CHECK(render_trace_json(trace) ==
          "{\"steps\":[{\"pair\":[\"B\",\"C\"],\"value\":-0.1,\"scenarios\":9}],"
          "\"exhausted\":false}\n");
}

TEST_CASE("tie-breaking picks the lowest index pair") {
    // both |c| = 0.1; (A,B) precedes (A,C)
    CorrelationMatrix c = matrix("A,B,C\n1,0.1,-0.1\n0.1,1,0.9\n-0.1,0.9,1\n");
    // A=B, C=-A, C=B forces the steady state; removing (A,B) must come first
    RepairTrace trace = repair(c);
    REQUIRE(!trace.steps.empty());
    CHECK(trace.steps[0].a == "A");
    CHECK(trace.steps[0].b == "B");
}

TEST_CASE("repair is deterministic and magnitudes never decrease") {
    std::mt19937 rng(777);
    for (int i = 0; i < 25; ++i) {
        CorrelationMatrix c = random_matrix(rng, 4);
        RepairTrace first = repair(c);
        RepairTrace second = repair(c);
        REQUIRE(first.steps.size() == second.steps.size());
        for (std::size_t k = 0; k < first.steps.size(); ++k) {
            CHECK(first.steps[k].a == second.steps[k].a);
            CHECK(first.steps[k].value == second.steps[k].value);
            if (k > 0)
                CHECK(std::fabs(first.steps[k].value) >=
                      std::fabs(first.steps[k - 1].value));
        }
        // scenario counts along the trace never shrink
        for (std::size_t k = 1; k < first.steps.size(); ++k)
            CHECK(first.steps[k].scenario_count >=
                  first.steps[k - 1].scenario_count);
        CHECK(render_trace_json(first) == render_trace_json(second));
    }
}

TEST_CASE("at most n(n-1)/2 removals") {
    std::mt19937 rng(4242);
    for (int i = 0; i < 10; ++i) {
        CorrelationMatrix c = random_matrix(rng, 4);
        CHECK(repair(c).steps.size() <= 6);
    }
}
