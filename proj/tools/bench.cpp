// Compares the serial reference paths (threads = 1) against the OpenMP
// kernels on the bundled workloads and checks that both produce the same
// output.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "trendsolve/graph.hpp"
#include "trendsolve/model_io.hpp"
#include "trendsolve/ode.hpp"
#include "trendsolve/solve.hpp"

using namespace trendsolve;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
}

template <typename F>
double time_best_of(int repeats, F&& fn) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        auto start = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, ms_since(start));
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool same) {
    std::printf("%-28s serial %8.2f ms   parallel %8.2f ms   speedup %.2fx   %s\n",
                name, serial_ms, parallel_ms, serial_ms / parallel_ms,
                same ? "outputs identical" : "OUTPUT MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    std::string fixtures = argc > 1 ? argv[1] : "fixtures";
    int threads = 0;
#ifdef _OPENMP
    threads = omp_get_max_threads();
    std::printf("OpenMP enabled, %d threads\n", threads);
#else
    std::printf("built without OpenMP; parallel paths run serially\n");
#endif

    SolveOptions serial;
    serial.threads = 1;
    SolveOptions parallel;
    parallel.threads = threads > 0 ? threads : 1;

    TrendModel rrm = translate(parse_ode(read_file(fixtures + "/rrm.ode"))).model;
    {
        ScenarioSet a, b;
        double s = time_best_of(3, [&] { a = brute_force_solve(rrm, Mode::Full, serial); });
        double p = time_best_of(3, [&] { b = brute_force_solve(rrm, Mode::Full, parallel); });
        report("brute force, 5 vars", s, p,
               a.scenarios == b.scenarios && a.variables == b.variables);
    }

    // A wider enumeration workload: one extra unconstrained variable.
    {
        TrendModel wide = rrm;
        wide.variables.push_back(Variable{"U", Sign::Pos});
        ScenarioSet a, b;
        double s = time_best_of(3, [&] { a = brute_force_solve(wide, Mode::Full, serial); });
        double p = time_best_of(3, [&] { b = brute_force_solve(wide, Mode::Full, parallel); });
        report("brute force, 6 vars", s, p, a.scenarios == b.scenarios);
    }

    TrendModel im = parse_model(read_file(fixtures + "/im.tm"));
    {
        ScenarioSet a, b;
        double s = time_best_of(3, [&] { a = solve(im, Mode::Full, serial); });
        double p = time_best_of(3, [&] { b = solve(im, Mode::Full, parallel); });
        report("backtracking solve, IM", s, p, a.scenarios == b.scenarios);
    }

    {
        ScenarioSet nodes = brute_force_solve(rrm, Mode::Full, parallel);
        TransitionGraph a, b;
        double s = time_best_of(3, [&] { a = build_graph(nodes, serial); });
        double p = time_best_of(3, [&] { b = build_graph(nodes, parallel); });
        std::printf("graph nodes: %zu, edges: %zu\n", nodes.size(), a.edges.size());
        report("transition graph build", s, p, a.edges == b.edges);
    }
    return 0;
}
