#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "graphcheck/graph.hpp"
#include "graphcheck/qpe.hpp"

namespace graphcheck::tester {

enum class Stage { walk_rejected, qpe_completed };
enum class Mode { sampled, deterministic };

struct TestReport {
    bool verdict = false;
    Stage stage_reached = Stage::walk_rejected;
    int m_star = 0;
    int t_star = 3;
    std::optional<int> measured_node;
    MarkedSet marked_set;
    std::optional<int> p_bits;
    std::optional<int> qpe_outcome;
    std::optional<double> theta2_reference;
    std::uint64_t seed = 0;
    Mode mode = Mode::deterministic;
};

// Walk stage (steps 1-4), then QPE stage (5.1-5.7) and verdict (6-7).
// Deterministic mode replaces the single-shot measurements with the
// marked-probability threshold (0.5) and the modal QPE outcome.
TestReport test_completeness(const Graph& g, std::uint64_t seed, Mode mode,
                             std::optional<int> p_override = std::nullopt);

struct Diagnostics {
    TestReport report;
    std::vector<double> marked_probability_trace;  // t = 0..6 under P'
    std::vector<double> qpe_mass;
    double theta_j = 0.0;
    double gap = 0.0;  // theta_j - theta2, signed
    bool classical_complete = false;
};

// Deterministic run (seed 0) with the walk trace, full QPE histogram, the
// nearest dynamic phase, and the classical oracle alongside the verdict.
Diagnostics analyze(const Graph& g);

}  // namespace graphcheck::tester
