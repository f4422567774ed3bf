#pragma once

namespace graphcheck::analytic {

enum class ChebyshevKind { first, second };

/// T_k(x) = cos(k arccos x); U_k(x) = sin((k+1) arccos x)/sin(arccos x),
/// with U_{-1} = 0 and the |x| -> 1 limits handled analytically.
double chebyshev(ChebyshevKind kind, int k, double x);

struct EigenphaseTriple {
    double theta0;  // always 0
    double theta1;  // arccos(1/(n-1))
    double theta2;  // arccos((n-m-1)/(n-1))
};

EigenphaseTriple eigenphases(int n, int m);

// Closed forms for the complete graph. Real-valued m (and real t >= 0) are
// accepted so the ansatz line m = (n-1)/a can be evaluated without rounding.
double p_marked_closed(double t, double n, double m);
double tad_closed(double t, double n, double m);
double t_max(double n, double m);

/// Root of (4*sqrt(2) a^{3/2} + 2a - 3) arctan(sqrt(2a-1)) - 2*pi (sqrt(2) a^{3/2} - 1)
/// in the bracket [1.2, 1.8].
double solve_a();

struct OptimalityConstants {
    double a;
    double t_star_max;
    double t_star_second;
    int t_star;
    double p_low;
    double p_high;
};

OptimalityConstants t_star_constants(double a);

}  // namespace graphcheck::analytic
