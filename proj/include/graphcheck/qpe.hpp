#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "graphcheck/spectral.hpp"
#include "graphcheck/walk.hpp"

namespace graphcheck::qpe {

// p = floor(|log2(13/n^3.4)|) + 1, clamped to [4, 24].
int qpe_bits(int n);
inline constexpr int kMinBits = 4;
inline constexpr int kMaxBits = 24;

struct QpeDistribution {
    int p = 0;
    std::vector<double> mass;  // index k in [0, 2^p)

    int modal_outcome() const;
};

// Exact p-bit phase-measurement statistics for the given input state against
// the walk spectrum: Pr(k) = sum_u w_u K_p(phi_u - k/2^p) with the textbook
// kernel K_p(d) = sin^2(2^p pi d) / (2^p sin(pi d))^2, K_p(0) = 1.
// The phase unit is phi = theta/pi since W eigenvalues are e^{2 i theta}.
QpeDistribution qpe_distribution(const spectral::Spectrum& spec, const WalkState& input, int p);

std::vector<int> qpe_sample(const QpeDistribution& dist, std::mt19937_64& rng, int shots);

// True iff k is theta2's p-bit representative round(2^p theta2/pi) mod 2^p.
bool phase_match(int k, int p, double theta2);
bool phase_match_tolerant(int k, int p, double theta2);  // +-1 gridpoint admitted

double qpe_kernel(double delta, int p);

}  // namespace graphcheck::qpe
