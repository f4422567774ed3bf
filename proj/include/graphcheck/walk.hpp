#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "graphcheck/graph.hpp"

namespace graphcheck {

using cplx = std::complex<double>;

// Amplitude vector over the n^2 bipartite basis |x,y>, row-major: index x*n+y.
struct WalkState {
    int n = 0;
    std::vector<cplx> amp;

    double squared_norm() const;
};

// W = R_B R_A applied in O(n^2) per step via the block (alpha) and stride
// (beta) rank-1 structure of the projectors. Kernels are OpenMP-parallel
// over vertex blocks; the serial namespace keeps a plain reference path.
class WalkOperator {
public:
    explicit WalkOperator(StochasticMatrix pprime);

    int n() const { return n_; }
    const StochasticMatrix& transition() const { return p_; }
    double amp_root(int row, int col) const { return sq_[row * static_cast<std::size_t>(n_) + col]; }

    void reflect_a(WalkState& s) const;
    void reflect_b(WalkState& s) const;
    void step(WalkState& s) const;

private:
    int n_;
    StochasticMatrix p_;
    std::vector<double> sq_;  // sqrt(p'_xy)
};

WalkState initial_state(const StochasticMatrix& p);
WalkOperator build_walk(const StochasticMatrix& pprime);
WalkState evolve(const WalkOperator& w, WalkState s, int t);
double marked_probability(const WalkState& s, const MarkedSet& m);

// Samples x with probability sum_y |amp(x,y)|^2; returns a 1-indexed node id.
int measure_position(const WalkState& s, std::mt19937_64& rng);

// F(T) with the 1/(T-1) prefactor and the t = 0..T sum, as defined.
double tad_direct(const WalkOperator& w, const WalkState& s0, int T);

// Serial reference kernels (test oracle and benchmark baseline).
namespace serial {
void reflect_a(const WalkOperator& w, WalkState& s);
void reflect_b(const WalkOperator& w, WalkState& s);
WalkState evolve(const WalkOperator& w, WalkState s, int t);
}  // namespace serial

// Dense n^2 x n^2 matrix of W; test oracle, n <= 40.
Eigen::MatrixXd dense_walk_matrix(const WalkOperator& w);

}  // namespace graphcheck
