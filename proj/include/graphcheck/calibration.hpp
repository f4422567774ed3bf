#pragma once

#include <string>
#include <vector>

namespace graphcheck::calibration {

enum class EdgePolicy { unmarked, marked };

struct SweepRow {
    int n = 0;
    EdgePolicy kind = EdgePolicy::unmarked;
    double theta_j = 0.0;
    double theta2 = 0.0;
    double gap = 0.0;  // |theta_j - theta2|, strictly positive
    int l_bits = 0;
    int f_bits = -1;  // filled in once the power-law fit exists
};

struct PowerLawFit {
    double c = 0.0;
    double k = 0.0;
    double adjusted_c = 0.0;  // c scaled down so adjusted_c/n^k lower-bounds every row
};

// Zero bits in the binary fraction of v before the first 1; v >= 1 -> 0.
int leading_zero_bits(double v);

// For each n: K_n with node n marked (m=1), one edge removed per policy
// (unmarked: {1,2}; marked: {1,n}), theta_j from the structured spectrum.
std::vector<SweepRow> worst_case_sweep(int n_min, int n_max, EdgePolicy policy);

// Unweighted least squares on (log n, log gap) -> gap ~ c / n^k.
PowerLawFit fit_power_law(const std::vector<SweepRow>& rows);

// f = floor(|log2(adjusted_c / n^k)|) per row.
void assign_f_bits(std::vector<SweepRow>& rows, const PowerLawFit& fit);

// Writes sweep.csv, band.csv, bits.csv, fit.csv into out_dir; returns paths.
std::vector<std::string> emit_report(const std::vector<SweepRow>& rows, const PowerLawFit& fit,
                                     const std::string& out_dir);

}  // namespace graphcheck::calibration
