#include "graphcheck/calibration.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "graphcheck/analytic.hpp"
#include "graphcheck/graph.hpp"
#include "graphcheck/spectral.hpp"

namespace graphcheck::calibration {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* kind_name(EdgePolicy k) {
    return k == EdgePolicy::unmarked ? "unmarked-unmarked" : "marked-unmarked";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);  // binary: LF endings everywhere
    if (!f) throw std::runtime_error("emit_report: cannot write " + path);
    return f;
}

}  // namespace

int leading_zero_bits(double v) {
    if (v <= 0.0) throw std::invalid_argument("leading_zero_bits: value must be positive");
    if (v >= 1.0) return 0;
    int e;
    std::frexp(v, &e);  // v = f * 2^e, f in [0.5, 1)
    return -e;
}

std::vector<SweepRow> worst_case_sweep(int n_min, int n_max, EdgePolicy policy) {
    if (n_min < 4 || n_min > n_max)
        throw std::invalid_argument("worst_case_sweep: need 4 <= n_min <= n_max");
    std::vector<SweepRow> rows(n_max - n_min + 1);
#pragma omp parallel for schedule(dynamic)
    for (int n = n_min; n <= n_max; ++n) {
        const Edge victim = (policy == EdgePolicy::unmarked) ? Edge(1, 2) : Edge(1, n);
        const Graph g = remove_edges(complete_graph(n), {victim});
        const StochasticMatrix pprime = mark_nodes(transition_matrix(g), MarkedSet({n}));
        const spectral::Spectrum spec = spectral::walk_spectrum(pprime, false);
        const double theta2 = spectral::reference_theta2(n, 1);
        const spectral::DynamicPhase dp = spectral::closest_dynamic_phase(spec, theta2);
        SweepRow& r = rows[n - n_min];
        r.n = n;
        r.kind = policy;
        r.theta_j = dp.theta_j;
        r.theta2 = theta2;
        // Marked-incident removal drives theta_j above theta2; the bit budget
        // cares about the magnitude of the separation either way.
        r.gap = std::abs(dp.gap);
        r.l_bits = leading_zero_bits(r.gap);
    }
    return rows;
}

PowerLawFit fit_power_law(const std::vector<SweepRow>& rows) {
    if (rows.size() < 8) throw std::invalid_argument("fit_power_law: need at least 8 rows");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const SweepRow& r : rows) {
        if (r.gap <= 0.0)
            throw std::invalid_argument("fit_power_law: non-positive gap at n=" +
                                        std::to_string(r.n));
        const double x = std::log(static_cast<double>(r.n));
        const double y = std::log(r.gap);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(rows.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;
    PowerLawFit fit;
    fit.k = -slope;
    fit.c = std::exp(intercept);
    double scale = 1.0;
    for (const SweepRow& r : rows) {
        const double bound = fit.c / std::pow(r.n, fit.k);
        if (bound > r.gap) scale = std::min(scale, r.gap / bound);
    }
    fit.adjusted_c = fit.c * scale;
    return fit;
}

void assign_f_bits(std::vector<SweepRow>& rows, const PowerLawFit& fit) {
    for (SweepRow& r : rows) {
        const double bound = fit.adjusted_c / std::pow(r.n, fit.k);
        r.f_bits = static_cast<int>(std::floor(std::abs(std::log2(bound))));
    }
}

std::vector<std::string> emit_report(const std::vector<SweepRow>& rows, const PowerLawFit& fit,
                                     const std::string& out_dir) {
    if (rows.empty()) throw std::invalid_argument("emit_report: no sweep rows");
    std::vector<std::string> paths;

    {
        const std::string path = out_dir + "/sweep.csv";
        std::ofstream f = open_out(path);
        f << "n,removed_edge_kind,theta_j,theta2,gap,l_bits,f_bits\n";
        for (const SweepRow& r : rows)
            f << r.n << ',' << kind_name(r.kind) << ',' << num(r.theta_j) << ',' << num(r.theta2)
              << ',' << num(r.gap) << ',' << r.l_bits << ',' << r.f_bits << '\n';
        paths.push_back(path);
    }
    {
        // Marked-node probability at the optimal time on the ansatz line
        // m = (n-1)/a, against the small-n / large-n limits.
        const std::string path = out_dir + "/band.csv";
        std::ofstream f = open_out(path);
        f << "n,p_marked,band_low,band_high\n";
        const double a = analytic::solve_a();
        const analytic::OptimalityConstants oc = analytic::t_star_constants(a);
        for (const SweepRow& r : rows) {
            const double n = r.n;
            const double m = (n - 1.0) / a;
            const double p = analytic::p_marked_closed(analytic::t_max(n, m), n, m);
            f << r.n << ',' << num(p) << ',' << num(oc.p_low) << ',' << num(oc.p_high) << '\n';
        }
        paths.push_back(path);
    }
    {
        const std::string path = out_dir + "/bits.csv";
        std::ofstream f = open_out(path);
        f << "n,f_bits,l_bits,f_ratio,l_ratio\n";
        for (const SweepRow& r : rows)
            f << r.n << ',' << r.f_bits << ',' << r.l_bits << ','
              << num(static_cast<double>(r.f_bits) / r.n) << ','
              << num(static_cast<double>(r.l_bits) / r.n) << '\n';
        paths.push_back(path);
    }
    {
        const std::string path = out_dir + "/fit.csv";
        std::ofstream f = open_out(path);
        f << "n,gap,fitted,lower_bound\n";
        for (const SweepRow& r : rows) {
            const double nk = std::pow(r.n, fit.k);
            f << r.n << ',' << num(r.gap) << ',' << num(fit.c / nk) << ','
              << num(fit.adjusted_c / nk) << '\n';
        }
        paths.push_back(path);
    }
    return paths;
}

}  // namespace graphcheck::calibration
