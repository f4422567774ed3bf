#include "graphcheck/tester.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "graphcheck/analytic.hpp"
#include "graphcheck/rng.hpp"
#include "graphcheck/spectral.hpp"
#include "graphcheck/walk.hpp"

namespace graphcheck::tester {

namespace {

constexpr double kRejectThreshold = 0.5;

void require_connected(const Graph& g) {
    const int n = g.n();
    std::vector<std::vector<int>> adj(n + 1);
    for (const Edge& e : g.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(n + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int y : adj[x])
            if (!seen[y]) {
                seen[y] = 1;
                ++reached;
                stack.push_back(y);
            }
    }
    if (reached != n)
        throw std::invalid_argument("test_completeness: walk undefined on isolated components");
}

MarkedSet draw_marked(int n, int m_star, std::mt19937_64& rng) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    for (int i = 0; i < m_star; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(m_star);
    return MarkedSet(pool);
}

}  // namespace

TestReport test_completeness(const Graph& g, std::uint64_t seed, Mode mode,
                             std::optional<int> p_override) {
    const int n = g.n();
    if (n < 4) throw std::invalid_argument("test_completeness: n must be >= 4");
    require_connected(g);

    static const double a = analytic::solve_a();

    TestReport r;
    r.seed = seed;
    r.mode = mode;
    r.m_star = optimal_marked_count(n, a);

    auto mark_rng = make_stream(seed, "mark");
    r.marked_set = draw_marked(n, r.m_star, mark_rng);

    const StochasticMatrix p = transition_matrix(g);
    const StochasticMatrix pprime = mark_nodes(p, r.marked_set);
    const WalkOperator walk = build_walk(pprime);
    const WalkState evolved = evolve(walk, initial_state(p), r.t_star);

    if (mode == Mode::sampled) {
        auto measure_rng = make_stream(seed, "measure");
        const int node = measure_position(evolved, measure_rng);
        r.measured_node = node;
        if (!r.marked_set.contains(node)) return r;  // walk-rejected
    } else {
        if (marked_probability(evolved, r.marked_set) < kRejectThreshold) return r;
    }
    r.stage_reached = Stage::qpe_completed;

    // Step 5.1: re-mark exactly one node, fixed to the lowest node id for
    // reproducibility; the reference eigenstate is built for that same node.
    const MarkedSet single({1});
    const StochasticMatrix psecond = mark_nodes(p, single);
    const spectral::Spectrum spec = spectral::walk_spectrum(psecond, true);
    const WalkState input = spectral::theta2_eigenvector_for(n, single);

    const int p_bits = p_override ? *p_override : qpe::qpe_bits(n);
    r.p_bits = p_bits;
    const qpe::QpeDistribution dist = qpe::qpe_distribution(spec, input, p_bits);
    int outcome;
    if (mode == Mode::sampled) {
        auto qpe_rng = make_stream(seed, "qpe");
        outcome = qpe::qpe_sample(dist, qpe_rng, 1).front();
    } else {
        outcome = dist.modal_outcome();
    }
    r.qpe_outcome = outcome;

    const double theta2 = spectral::reference_theta2(n, 1);
    r.theta2_reference = theta2;
    r.verdict = qpe::phase_match(outcome, p_bits, theta2);
    return r;
}

Diagnostics analyze(const Graph& g) {
    Diagnostics d;
    d.report = test_completeness(g, 0, Mode::deterministic);
    d.classical_complete = is_complete_classical(g);

    const StochasticMatrix p = transition_matrix(g);
    const StochasticMatrix pprime = mark_nodes(p, d.report.marked_set);
    const WalkOperator walk = build_walk(pprime);
    WalkState s = initial_state(p);
    for (int t = 0; t <= 6; ++t) {
        if (t > 0) walk.step(s);
        d.marked_probability_trace.push_back(marked_probability(s, d.report.marked_set));
    }

    const MarkedSet single({1});
    const StochasticMatrix psecond = mark_nodes(p, single);
    const spectral::Spectrum spec = spectral::walk_spectrum(psecond, true);
    const double theta2 = spectral::reference_theta2(g.n(), 1);
    const spectral::DynamicPhase dp = spectral::closest_dynamic_phase(spec, theta2);
    d.theta_j = dp.theta_j;
    d.gap = dp.gap;

    const int p_bits = d.report.p_bits ? *d.report.p_bits : qpe::qpe_bits(g.n());
    const WalkState input = spectral::theta2_eigenvector_for(g.n(), single);
    d.qpe_mass = qpe::qpe_distribution(spec, input, p_bits).mass;
    return d;
}

}  // namespace graphcheck::tester
