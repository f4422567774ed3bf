#include "graphcheck/qpe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphcheck::qpe {

int qpe_bits(int n) {
    if (n < 4) throw std::invalid_argument("qpe_bits: n must be >= 4");
    const double lower_bound = 13.0 / std::pow(n, 3.4);
    const int p = static_cast<int>(std::floor(std::abs(std::log2(lower_bound)))) + 1;
    return std::clamp(p, kMinBits, kMaxBits);
}

int QpeDistribution::modal_outcome() const {
    return static_cast<int>(std::max_element(mass.begin(), mass.end()) - mass.begin());
}

double qpe_kernel(double delta, int p) {
    const double grid = std::ldexp(1.0, p);  // 2^p
    double d = delta - std::round(delta);    // reduce mod 1 to [-1/2, 1/2]
    const double s = std::sin(M_PI * d);
    if (std::abs(s) < 1e-15) return 1.0;
    const double num = std::sin(grid * M_PI * d);
    const double den = grid * s;
    return (num * num) / (den * den);
}

QpeDistribution qpe_distribution(const spectral::Spectrum& spec, const WalkState& input, int p) {
    if (p < 1 || p > kMaxBits) throw std::invalid_argument("qpe_distribution: bad bit count");
    const std::size_t dim = input.amp.size();
    if (spec.n != input.n) throw std::invalid_argument("qpe_distribution: dimension mismatch");

    double total_multiplicity = 0.0;
    for (const auto& e : spec.entries) total_multiplicity += e.weight;
    if (std::abs(total_multiplicity - static_cast<double>(dim)) > 1e-6)
        throw std::invalid_argument("qpe_distribution: incomplete spectrum (weights do not sum to n^2)");

    // Projection weight and normalized phase phi = theta/pi = phase/(2 pi) per entry.
    std::vector<double> weights;
    std::vector<double> phis;
    double explicit_sum = 0.0;
    double implicit_phi = 0.0;
    bool has_implicit = false;
    for (const auto& e : spec.entries) {
        if (!e.eigenvector) {
            if (has_implicit)
                throw std::invalid_argument("qpe_distribution: multiple implicit spectrum entries");
            has_implicit = true;
            implicit_phi = e.phase / (2.0 * M_PI);
            continue;
        }
        cplx overlap{0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i) overlap += std::conj((*e.eigenvector)[i]) * input.amp[i];
        const double w = std::norm(overlap);
        weights.push_back(w);
        double phi = e.phase / (2.0 * M_PI);
        phi -= std::floor(phi);
        phis.push_back(phi);
        explicit_sum += w;
    }
    if (has_implicit) {
        const double w0 = 1.0 - explicit_sum;
        if (w0 < -1e-8)
            throw std::invalid_argument("qpe_distribution: negative residual projector weight");
        weights.push_back(std::max(0.0, w0));
        phis.push_back(implicit_phi - std::floor(implicit_phi));
    } else if (std::abs(explicit_sum - 1.0) > 1e-8) {
        throw std::invalid_argument("qpe_distribution: eigenspace weights sum to " +
                                    std::to_string(explicit_sum) + ", not 1 (incomplete spectrum)");
    }

    QpeDistribution dist;
    dist.p = p;
    const int outcomes = 1 << p;
    dist.mass.assign(outcomes, 0.0);
    const double inv = 1.0 / outcomes;
    for (std::size_t u = 0; u < weights.size(); ++u) {
        if (weights[u] == 0.0) continue;
        for (int k = 0; k < outcomes; ++k)
            dist.mass[k] += weights[u] * qpe_kernel(phis[u] - k * inv, p);
    }
    return dist;
}

std::vector<int> qpe_sample(const QpeDistribution& dist, std::mt19937_64& rng, int shots) {
    if (shots < 1) throw std::invalid_argument("qpe_sample: shots must be >= 1");
    std::vector<double> cdf(dist.mass.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < dist.mass.size(); ++k) {
        acc += dist.mass[k];
        cdf[k] = acc;
    }
    std::uniform_real_distribution<double> unif(0.0, acc);
    std::vector<int> out;
    out.reserve(shots);
    for (int s = 0; s < shots; ++s) {
        const double u = unif(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        out.push_back(static_cast<int>(std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1)));
    }
    return out;
}

namespace {
int theta2_representative(int p, double theta2) {
    const long long grid = 1LL << p;
    return static_cast<int>(std::llround(grid * theta2 / M_PI) % grid);
}
}  // namespace

bool phase_match(int k, int p, double theta2) {
    if (k < 0 || k >= (1 << p)) throw std::invalid_argument("phase_match: outcome out of range");
    return k == theta2_representative(p, theta2);
}

bool phase_match_tolerant(int k, int p, double theta2) {
    if (k < 0 || k >= (1 << p)) throw std::invalid_argument("phase_match: outcome out of range");
    const int rep = theta2_representative(p, theta2);
    const int grid = 1 << p;
    const int diff = std::abs(k - rep);
    return diff <= 1 || diff == grid - 1;
}

}  // namespace graphcheck::qpe
