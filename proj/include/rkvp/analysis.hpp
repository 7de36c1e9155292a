#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rkvp/solver.hpp"

namespace rkvp {

struct ErrorRow {
    double nu;
    double t;
    double alpha;
    double exact;
    double approx;
    double abs_error;
};

struct ErrorReport {
    std::vector<ErrorRow> rows;
    double linf = 0.0;
    int n = 0;
};

struct ConvergenceStudy {
    std::vector<std::pair<int, double>> entries;  // (n, linf), n increasing
    std::vector<double> orders;                   // between successive entries
};

struct MonotonicityResult {
    bool monotone = true;
    std::vector<std::string> violations;
};

/// Maximum absolute difference over matching sample sets.
double linf_error(std::span<const double> exact, std::span<const double> approx);

/// ln(linf_half / linf_full) / ln 2, positive when the error decreases under
/// grid doubling.
double convergence_order(double linf_half, double linf_full);

/// Runs the solver at n = 6 for alpha in {0.25, 0.5, 0.75} and samples the
/// five interior grid points at t = 0.5; one report per alpha.
std::vector<ErrorReport> table1_report(const ProblemSpec& base);

/// Long-format (nu, t, value) samples.
struct GridData {
    std::vector<std::array<double, 3>> rows;
};

using Field2D = std::function<double(double, double)>;

/// resolution x resolution tensor sampling of a field over the domain.
GridData surface_export(const Field2D& field, Interval space, Interval time,
                        int resolution);
/// 1-D slice at fixed t.
GridData slice_export(const Field2D& field, Interval space, double t,
                      int resolution);
/// Pointwise error rows between two fields along the t-slice.
std::vector<ErrorRow> error_curve(const Field2D& exact, const Field2D& approx,
                                  double alpha, Interval space, double t,
                                  int resolution);

/// Non-increasing L-inf across the study entries, with 10% slack per step.
MonotonicityResult monotonicity_check(const ConvergenceStudy& study);

/// Builds a study by running the solver for each n and measuring the L-inf
/// error against the exact soliton on a dense slice at t.
ConvergenceStudy convergence_study(const ProblemSpec& base,
                                   const std::vector<int>& ns, double t,
                                   int resolution);

/// L-inf error of a solved field against the exact soliton on a dense slice.
double solution_linf(const VPSolution& solution, const ProblemSpec& spec,
                     double t, int resolution);

void write_error_csv(std::ostream& out, std::span<const ErrorRow> rows);
void write_grid_csv(std::ostream& out, const GridData& grid);
void write_convergence_csv(std::ostream& out, const ConvergenceStudy& study);

/// Small gnuplot script plotting the value column of a grid CSV.
std::string gnuplot_script(const std::string& csv_path, const std::string& title);

/// Fixed-format float used by every CSV writer, so identical runs produce
/// identical bytes.
std::string csv_number(double v);

}  // namespace rkvp
