#include "graphcheck/walk.hpp"

#include <cmath>
#include <stdexcept>

namespace graphcheck {

double WalkState::squared_norm() const {
    double s = 0.0;
    for (const cplx& a : amp) s += std::norm(a);
    return s;
}

WalkOperator::WalkOperator(StochasticMatrix pprime)
    : n_(pprime.n()), p_(std::move(pprime)), sq_(static_cast<std::size_t>(n_) * n_) {
    // Unmarked rows must have symmetric support (q_yx = p_xy > 0 together).
    for (int x = 0; x < n_; ++x) {
        if (p_.marked().contains(x + 1)) continue;
        for (int y = 0; y < n_; ++y) {
            if (p_.marked().contains(y + 1)) continue;
            const bool fwd = p_(x, y) > 0.0, bwd = p_(y, x) > 0.0;
            if (fwd != bwd)
                throw std::invalid_argument("build_walk: asymmetric support between nodes " +
                                            std::to_string(x + 1) + " and " + std::to_string(y + 1));
        }
    }
    for (std::size_t i = 0; i < sq_.size(); ++i) sq_[i] = std::sqrt(p_.entries()[i]);
}

void WalkOperator::reflect_a(WalkState& s) const {
    const int n = n_;
    const double* sq = sq_.data();
    cplx* a = s.amp.data();
#pragma omp parallel for schedule(static)
    for (int x = 0; x < n; ++x) {
        const double* row = sq + x * static_cast<std::size_t>(n);
        cplx* blk = a + x * static_cast<std::size_t>(n);
        cplx c{0.0, 0.0};
        for (int y = 0; y < n; ++y) c += row[y] * blk[y];
        c *= 2.0;
        for (int y = 0; y < n; ++y) blk[y] = c * row[y] - blk[y];
    }
}

void WalkOperator::reflect_b(WalkState& s) const {
    const int n = n_;
    const double* sq = sq_.data();
    cplx* a = s.amp.data();
#pragma omp parallel for schedule(static)
    for (int y = 0; y < n; ++y) {
        const double* row = sq + y * static_cast<std::size_t>(n);  // beta_y[x] = sqrt(p'_yx)
        cplx c{0.0, 0.0};
        for (int x = 0; x < n; ++x) c += row[x] * a[x * static_cast<std::size_t>(n) + y];
        c *= 2.0;
        for (int x = 0; x < n; ++x) {
            cplx& e = a[x * static_cast<std::size_t>(n) + y];
            e = c * row[x] - e;
        }
    }
}

void WalkOperator::step(WalkState& s) const {
    reflect_a(s);
    reflect_b(s);
}

WalkState initial_state(const StochasticMatrix& p) {
    if (p.marked().m() != 0)
        throw std::invalid_argument("initial_state: transition matrix must be unmarked");
    const int n = p.n();
    WalkState s;
    s.n = n;
    s.amp.resize(static_cast<std::size_t>(n) * n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            s.amp[x * static_cast<std::size_t>(n) + y] = inv_sqrt_n * std::sqrt(p(x, y));
    return s;
}

WalkOperator build_walk(const StochasticMatrix& pprime) { return WalkOperator(pprime); }

WalkState evolve(const WalkOperator& w, WalkState s, int t) {
    if (t < 0) throw std::invalid_argument("evolve: t must be >= 0");
    if (s.n != w.n()) throw std::invalid_argument("evolve: state/operator dimension mismatch");
    for (int i = 0; i < t; ++i) w.step(s);
    return s;
}

double marked_probability(const WalkState& s, const MarkedSet& m) {
    const int n = s.n;
    double p = 0.0;
    for (int node : m.members) {
        if (node < 1 || node > n)
            throw std::invalid_argument("marked_probability: node out of range");
        const cplx* blk = s.amp.data() + (node - 1) * static_cast<std::size_t>(n);
        for (int y = 0; y < n; ++y) p += std::norm(blk[y]);
    }
    return p;
}

int measure_position(const WalkState& s, std::mt19937_64& rng) {
    const int n = s.n;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    double acc = 0.0;
    for (int x = 0; x < n; ++x) {
        const cplx* blk = s.amp.data() + x * static_cast<std::size_t>(n);
        for (int y = 0; y < n; ++y) acc += std::norm(blk[y]);
        if (u < acc) return x + 1;
    }
    return n;  // u landed in rounding slack past the last cumulative bin
}

double tad_direct(const WalkOperator& w, const WalkState& s0, int T) {
    if (T < 2) throw std::invalid_argument("tad_direct: T must be >= 2");
    WalkState s = s0;
    double sum = 0.0;
    for (int t = 0; t <= T; ++t) {
        if (t > 0) w.step(s);
        double d = 0.0;
        for (std::size_t i = 0; i < s.amp.size(); ++i) d += std::norm(s.amp[i] - s0.amp[i]);
        sum += d;
    }
    return sum / (T - 1.0);
}

namespace serial {

void reflect_a(const WalkOperator& w, WalkState& s) {
    const int n = w.n();
    for (int x = 0; x < n; ++x) {
        cplx c{0.0, 0.0};
        for (int y = 0; y < n; ++y) c += w.amp_root(x, y) * s.amp[x * static_cast<std::size_t>(n) + y];
        c *= 2.0;
        for (int y = 0; y < n; ++y) {
            cplx& e = s.amp[x * static_cast<std::size_t>(n) + y];
            e = c * w.amp_root(x, y) - e;
        }
    }
}

void reflect_b(const WalkOperator& w, WalkState& s) {
    const int n = w.n();
    for (int y = 0; y < n; ++y) {
        cplx c{0.0, 0.0};
        for (int x = 0; x < n; ++x) c += w.amp_root(y, x) * s.amp[x * static_cast<std::size_t>(n) + y];
        c *= 2.0;
        for (int x = 0; x < n; ++x) {
            cplx& e = s.amp[x * static_cast<std::size_t>(n) + y];
            e = c * w.amp_root(y, x) - e;
        }
    }
}

WalkState evolve(const WalkOperator& w, WalkState s, int t) {
    for (int i = 0; i < t; ++i) {
        reflect_a(w, s);
        reflect_b(w, s);
    }
    return s;
}

}  // namespace serial

Eigen::MatrixXd dense_walk_matrix(const WalkOperator& w) {
    const int n = w.n();
    if (n > 40) throw std::invalid_argument("dense_walk_matrix: oracle limited to n <= 40");
    const int N = n * n;
    Eigen::MatrixXd pia = Eigen::MatrixXd::Zero(N, N);
    Eigen::MatrixXd pib = Eigen::MatrixXd::Zero(N, N);
    for (int x = 0; x < n; ++x) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
        for (int y = 0; y < n; ++y) v(x * n + y) = w.amp_root(x, y);
        pia += v * v.transpose();
    }
    for (int y = 0; y < n; ++y) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
        for (int x = 0; x < n; ++x) v(x * n + y) = w.amp_root(y, x);
        pib += v * v.transpose();
    }
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(N, N);
    return (2.0 * pib - eye) * (2.0 * pia - eye);
}

}  // namespace graphcheck
