// Serial vs OpenMP walk-step throughput on marked complete graphs.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "graphcheck/graph.hpp"
#include "graphcheck/walk.hpp"

using namespace graphcheck;

namespace {

double time_ms(const WalkOperator& w, WalkState s, int steps, bool parallel) {
    const auto t0 = std::chrono::steady_clock::now();
    if (parallel) {
        s = evolve(w, std::move(s), steps);
    } else {
        s = serial::evolve(w, std::move(s), steps);
    }
    const auto t1 = std::chrono::steady_clock::now();
    // keep the result observable so the loop is not dead code
    volatile double sink = s.squared_norm();
    (void)sink;
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int steps = (argc > 1) ? std::atoi(argv[1]) : 50;
#ifdef _OPENMP
    std::printf("# OpenMP, max threads %d\n", omp_get_max_threads());
#else
    std::printf("# built without OpenMP\n");
#endif
    std::printf("n,steps,serial_ms,parallel_ms,speedup\n");
    for (int n : {64, 128, 256, 512, 1024}) {
        const StochasticMatrix p = transition_matrix(complete_graph(n));
        const StochasticMatrix pprime = mark_nodes(p, MarkedSet({n}));
        const WalkOperator w = build_walk(pprime);
        const WalkState s0 = initial_state(p);
        time_ms(w, s0, 2, true);  // warm-up
        const double ser = time_ms(w, s0, steps, false);
        const double par = time_ms(w, s0, steps, true);
        std::printf("%d,%d,%.2f,%.2f,%.2fx\n", n, steps, ser, par, ser / par);
    }
    return 0;
}
