#include "graphcheck/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace graphcheck::analytic {

namespace {

// Trigonometric evaluation for real degree; stable near |x| = 1.
double cheb_t(double k, double x) { return std::cos(k * std::acos(x)); }

double cheb_u(double k, double x) {
    const double theta = std::acos(x);
    const double s = std::sin(theta);
    if (s < 1e-12) {
        // x -> 1: U_k -> k+1;  x -> -1: U_k -> (k+1) cos(k pi) by continuity
        if (x > 0.0) return k + 1.0;
        return (k + 1.0) * std::cos(k * M_PI);
    }
    return std::sin((k + 1.0) * theta) / s;
}

// A(t) of the marked-probability closed form; A(0) = 1 exactly.
double prob_amplitude(double t, double n, double m) {
    const double x = (n - m - 1.0) / (n - 1.0);
    return (n - 1.0) / (2.0 * n - m - 2.0) * cheb_t(2.0 * t, x) + cheb_u(2.0 * t - 1.0, x) +
           (n - m - 1.0) / (2.0 * n - m - 2.0);
}

long double optimality_lhs(long double a) {
    const long double pi = 3.14159265358979323846264338327950288L;
    const long double a32 = a * sqrtl(a);
    return (4.0L * sqrtl(2.0L) * a32 + 2.0L * a - 3.0L) * atanl(sqrtl(2.0L * a - 1.0L)) -
           2.0L * pi * (sqrtl(2.0L) * a32 - 1.0L);
}

// Real n > 1 is admitted (not just n >= 3) so the n -> 1 limit of the
// ansatz line can be taken numerically.
void check_complete_args(double n, double m) {
    if (n <= 1.0) throw std::invalid_argument("closed form requires n > 1");
    if (m <= 0.0 || m >= n) throw std::invalid_argument("closed form requires 0 < m < n");
}

}  // namespace

double chebyshev(ChebyshevKind kind, int k, double x) {
    if (std::abs(x) > 1.0) throw std::domain_error("chebyshev: |x| > 1");
    if (kind == ChebyshevKind::first) {
        if (k < 0) throw std::invalid_argument("chebyshev: T_k needs k >= 0");
        return cheb_t(k, x);
    }
    if (k < -1) throw std::invalid_argument("chebyshev: U_k needs k >= -1");
    if (k == -1) return 0.0;
    return cheb_u(k, x);
}

EigenphaseTriple eigenphases(int n, int m) {
    if (n <= 2) throw std::invalid_argument("eigenphases: n must exceed 2");
    if (m < 1 || m >= n) throw std::invalid_argument("eigenphases: need 1 <= m < n");
    return {0.0, std::acos(1.0 / (n - 1.0)), std::acos((n - m - 1.0) / (n - 1.0))};
}

double p_marked_closed(double t, double n, double m) {
    check_complete_args(n, m);
    if (t < 0.0) throw std::invalid_argument("p_marked_closed: t must be >= 0");
    const double amp = prob_amplitude(t, n, m);
    return m * (n - m) / (n * (n - 1.0)) * amp * amp + m * (m - 1.0) / (n * (n - 1.0));
}

double tad_closed(double t, double n, double m) {
    check_complete_args(n, m);
    if (t < 0.0) throw std::invalid_argument("tad_closed: t must be >= 0");
    const double x = (n - m - 1.0) / (n - 1.0);
    return 2.0 * (n - 1.0) * (n - m) * (2.0 * t + 1.0 - cheb_u(2.0 * t, x)) /
           (n * (2.0 * n - m - 2.0) * (t + 1.0));
}

double t_max(double n, double m) {
    if (n < 3.0) throw std::invalid_argument("t_max: n must be >= 3");
    if (m <= 0.0 || m > 2.0 * n - 2.0)
        throw std::domain_error("t_max: need 0 < m <= 2n-2");
    return std::atan(std::sqrt(2.0 * n - m - 2.0) / std::sqrt(m)) /
           (2.0 * std::acos((n - m - 1.0) / (n - 1.0)));
}

double solve_a() {
    // Bisection on [1.2, 1.8] (sign change verified), then a secant polish in
    // long double. The excluded values a = 1/2 and a = 2 lie outside the bracket.
    long double lo = 1.2L, hi = 1.8L;
    long double flo = optimality_lhs(lo);
    for (int i = 0; i < 80; ++i) {
        const long double mid = 0.5L * (lo + hi);
        const long double fmid = optimality_lhs(mid);
        if ((flo > 0) == (fmid > 0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    long double x0 = lo, x1 = hi;
    long double f0 = optimality_lhs(x0), f1 = optimality_lhs(x1);
    for (int i = 0; i < 8 && f1 != f0; ++i) {
        const long double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = optimality_lhs(x1);
    }
    return static_cast<double>(x1);
}

OptimalityConstants t_star_constants(double a) {
    OptimalityConstants c{};
    c.a = a;
    const double half_theta = std::acos((a - 1.0) / a);
    c.t_star_max = std::atan(std::sqrt(2.0 * a - 1.0)) / (2.0 * half_theta);
    c.t_star_second = c.t_star_max + M_PI / half_theta;
    c.t_star = static_cast<int>(std::floor(c.t_star_second + 0.5));
    // Limits of Eqs. 27a/27b, evaluated numerically on the ansatz line.
    const double n_low = 1.0 + 1e-6, n_high = 1e9;
    c.p_low = p_marked_closed(c.t_star_max, n_low, (n_low - 1.0) / a);
    c.p_high = p_marked_closed(c.t_star_max, n_high, (n_high - 1.0) / a);
    return c;
}

}  // namespace graphcheck::analytic
