#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "graphcheck/graph.hpp"
#include "graphcheck/walk.hpp"

namespace graphcheck::spectral {

// C_xy = sqrt(p'_xy p'_yx); block diag(P_{c n-m}, I_m) for a complete graph
// with trailing marked nodes.
struct SymmetricCouplingMatrix {
    int n = 0;
    Eigen::MatrixXd mat;
};

enum class SpectrumSource { structured, dense };

struct SpectrumEntry {
    double phase = 0.0;  // in (-pi, pi]
    std::optional<std::vector<cplx>> eigenvector;  // length n^2 when present
    double weight = 1.0;  // multiplicity (projector rank for the implicit entry)
};

struct Spectrum {
    int n = 0;
    std::vector<SpectrumEntry> entries;
    SpectrumSource source = SpectrumSource::structured;
};

SymmetricCouplingMatrix coupling_matrix(const StochasticMatrix& pprime);

// Eigenphases of W from the coupling matrix: sigma(U) = {+-1, e^{+-i arccos(lambda)}},
// W = U^2. Eigenvectors, when requested, are assembled inside the 2-dimensional
// invariant subspaces {T|lambda>, S T|lambda>}.
Spectrum walk_spectrum(const StochasticMatrix& pprime, bool need_vectors);

// Full n^2 x n^2 diagonalization; test oracle, n <= 40.
Spectrum walk_spectrum_dense(const StochasticMatrix& pprime);

double reference_theta2(int n, int m);

struct DynamicPhase {
    double theta_j;
    double gap;  // theta_j - theta2, signed
};

// Among positive-phase entries, the theta = phase/2 closest to theta2.
DynamicPhase closest_dynamic_phase(const Spectrum& spec, double theta2);

// |theta2+> of the complete-graph walk with the given nodes marked.
WalkState theta2_eigenvector_for(int n, const MarkedSet& marked);

// Spec surface: m trailing nodes marked.
WalkState theta2_eigenvector(int n, int m);

}  // namespace graphcheck::spectral
