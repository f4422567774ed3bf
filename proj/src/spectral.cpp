#include "graphcheck/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace graphcheck::spectral {

namespace {

constexpr double kUnitEigTol = 1e-10;

std::vector<cplx> to_std(const Eigen::VectorXcd& v) {
    return {v.data(), v.data() + v.size()};
}

// T |lambda>: coordinates v[x] spread over block x with weights sqrt(p'_xy).
Eigen::VectorXcd lift(const WalkOperator& w, const Eigen::VectorXd& v) {
    const int n = w.n();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) out(x * n + y) = v(x) * w.amp_root(x, y);
    return out;
}

Eigen::VectorXcd swap_registers(const Eigen::VectorXcd& v, int n) {
    Eigen::VectorXcd out(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) out(x * n + y) = v(y * n + x);
    return out;
}

Eigen::VectorXcd apply_walk(const WalkOperator& w, const Eigen::VectorXcd& v) {
    WalkState s;
    s.n = w.n();
    s.amp.assign(v.data(), v.data() + v.size());
    w.step(s);
    return Eigen::Map<const Eigen::VectorXcd>(s.amp.data(), v.size());
}

double wrap_phase(double ph) {
    while (ph > M_PI) ph -= 2.0 * M_PI;
    while (ph <= -M_PI) ph += 2.0 * M_PI;
    return ph;
}

// Eigenpairs of the restriction of W to span{b1, b2}.
struct TwoByTwoEig {
    cplx mu[2];
    Eigen::Vector2cd vec[2];
};

TwoByTwoEig solve_2x2(const Eigen::Matrix2cd& m) {
    TwoByTwoEig r;
    const cplx tr = m(0, 0) + m(1, 1);
    const cplx disc = std::sqrt(tr * tr - 4.0 * (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)));
    r.mu[0] = 0.5 * (tr + disc);
    r.mu[1] = 0.5 * (tr - disc);
    for (int k = 0; k < 2; ++k) {
        Eigen::Vector2cd w1(m(0, 1), r.mu[k] - m(0, 0));
        Eigen::Vector2cd w2(r.mu[k] - m(1, 1), m(1, 0));
        Eigen::Vector2cd w = (w1.norm() >= w2.norm()) ? w1 : w2;
        if (w.norm() < 1e-14) w = (k == 0) ? Eigen::Vector2cd(1, 0) : Eigen::Vector2cd(0, 1);
        r.vec[k] = w.normalized();
    }
    return r;
}

}  // namespace

SymmetricCouplingMatrix coupling_matrix(const StochasticMatrix& pprime) {
    const int n = pprime.n();
    SymmetricCouplingMatrix c;
    c.n = n;
    c.mat.resize(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) c.mat(x, y) = std::sqrt(pprime(x, y) * pprime(y, x));
    return c;
}

Spectrum walk_spectrum(const StochasticMatrix& pprime, bool need_vectors) {
    const int n = pprime.n();
    const SymmetricCouplingMatrix c = coupling_matrix(pprime);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.mat);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("walk_spectrum: eigensolver failed to converge; C norm = " +
                                 std::to_string(c.mat.norm()));
    const WalkOperator w = build_walk(pprime);

    Spectrum spec;
    spec.n = n;
    spec.source = SpectrumSource::structured;
    double explicit_weight = 0.0;
    for (int k = 0; k < n; ++k) {
        const double lam = es.eigenvalues()(k);
        const Eigen::VectorXd v = es.eigenvectors().col(k);
        const Eigen::VectorXcd tv = lift(w, v);
        if (std::abs(lam) >= 1.0 - kUnitEigTol) {
            // S T|lambda> = lambda T|lambda>; U eigenvalue +-1, W phase 0.
            SpectrumEntry e;
            e.phase = 0.0;
            e.weight = 1.0;
            if (need_vectors) e.eigenvector = to_std(tv);
            spec.entries.push_back(std::move(e));
            explicit_weight += 1.0;
            continue;
        }
        const Eigen::VectorXcd stv = swap_registers(tv, n);
        const Eigen::VectorXcd b1 = tv;
        const Eigen::VectorXcd b2 = (stv - lam * tv) / std::sqrt(1.0 - lam * lam);
        const Eigen::VectorXcd wb1 = apply_walk(w, b1);
        const Eigen::VectorXcd wb2 = apply_walk(w, b2);
        Eigen::Matrix2cd m;
        m(0, 0) = b1.dot(wb1);
        m(0, 1) = b1.dot(wb2);
        m(1, 0) = b2.dot(wb1);
        m(1, 1) = b2.dot(wb2);
        const TwoByTwoEig eig = solve_2x2(m);
        for (int j = 0; j < 2; ++j) {
            SpectrumEntry e;
            e.phase = wrap_phase(std::arg(eig.mu[j]));
            e.weight = 1.0;
            if (need_vectors) {
                Eigen::VectorXcd full = eig.vec[j](0) * b1 + eig.vec[j](1) * b2;
                e.eigenvector = to_std(full.normalized());
            }
            spec.entries.push_back(std::move(e));
            explicit_weight += 1.0;
        }
    }
    const double rest = static_cast<double>(n) * n - explicit_weight;
    if (rest > 0.5) {
        // Orthogonal complement of A + SA: both reflections act as -I there.
        SpectrumEntry e;
        e.phase = 0.0;
        e.weight = rest;
        spec.entries.push_back(std::move(e));
    }
    return spec;
}

Spectrum walk_spectrum_dense(const StochasticMatrix& pprime) {
    const WalkOperator w = build_walk(pprime);
    const Eigen::MatrixXd wm = dense_walk_matrix(w);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(wm.cast<cplx>());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("walk_spectrum_dense: eigensolver failed to converge");
    Spectrum spec;
    spec.n = pprime.n();
    spec.source = SpectrumSource::dense;
    for (int k = 0; k < wm.rows(); ++k) {
        SpectrumEntry e;
        e.phase = wrap_phase(std::arg(es.eigenvalues()(k)));
        e.weight = 1.0;
        e.eigenvector = to_std(es.eigenvectors().col(k));
        spec.entries.push_back(std::move(e));
    }
    return spec;
}

double reference_theta2(int n, int m) {
    if (n < 3) throw std::invalid_argument("reference_theta2: n must be >= 3");
    if (m < 1 || m >= n) throw std::invalid_argument("reference_theta2: need 1 <= m < n");
    return std::acos((n - m - 1.0) / (n - 1.0));
}

DynamicPhase closest_dynamic_phase(const Spectrum& spec, double theta2) {
    if (spec.entries.empty()) throw std::invalid_argument("closest_dynamic_phase: empty spectrum");
    bool found = false;
    double best = 0.0;
    for (const SpectrumEntry& e : spec.entries) {
        if (e.phase <= 1e-12) continue;  // phase-0 and negative branches excluded
        const double theta = e.phase / 2.0;
        if (!found || std::abs(theta - theta2) < std::abs(best - theta2)) {
            best = theta;
            found = true;
        }
    }
    if (!found) return {0.0, -theta2};
    return {best, best - theta2};
}

WalkState theta2_eigenvector_for(int n, const MarkedSet& marked) {
    if (n < 4) throw std::invalid_argument("theta2_eigenvector: n must be >= 4");
    const int m = marked.m();
    if (m < 1 || m >= n) throw std::invalid_argument("theta2_eigenvector: need 1 <= m < n");
    const StochasticMatrix pc = mark_nodes(transition_matrix(complete_graph(n)), marked);
    const SymmetricCouplingMatrix c = coupling_matrix(pc);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.mat);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("theta2_eigenvector: eigensolver failed to converge");
    const double target = (n - m - 1.0) / (n - 1.0);
    int best = 0;
    for (int k = 1; k < n; ++k)
        if (std::abs(es.eigenvalues()(k) - target) < std::abs(es.eigenvalues()(best) - target))
            best = k;
    const double lam = es.eigenvalues()(best);
    const WalkOperator w = build_walk(pc);
    const Eigen::VectorXcd b1 = lift(w, es.eigenvectors().col(best));
    const Eigen::VectorXcd b2 =
        (swap_registers(b1, n) - lam * b1) / std::sqrt(1.0 - lam * lam);
    Eigen::Matrix2cd mm;
    const Eigen::VectorXcd wb1 = apply_walk(w, b1);
    const Eigen::VectorXcd wb2 = apply_walk(w, b2);
    mm(0, 0) = b1.dot(wb1);
    mm(0, 1) = b1.dot(wb2);
    mm(1, 0) = b2.dot(wb1);
    mm(1, 1) = b2.dot(wb2);
    const TwoByTwoEig eig = solve_2x2(mm);
    const int plus = (std::arg(eig.mu[0]) > 0.0) ? 0 : 1;  // e^{+2i theta2} branch
    Eigen::VectorXcd full = (eig.vec[plus](0) * b1 + eig.vec[plus](1) * b2).normalized();
    WalkState s;
    s.n = n;
    s.amp = to_std(full);
    return s;
}

WalkState theta2_eigenvector(int n, int m) {
    std::vector<int> ids;
    for (int i = n - m + 1; i <= n; ++i) ids.push_back(i);
    return theta2_eigenvector_for(n, MarkedSet(ids));
}

}  // namespace graphcheck::spectral
