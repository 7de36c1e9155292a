#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "rkvp/solver.hpp"

namespace rkvp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitProperty = 4;

/// Flag values shared by all subcommands; validated against ProblemSpec
/// invariants before dispatch.
struct RunConfig {
    double alpha = 0.5;
    int n = 6;
    double c = 0.001;
    std::string mode = "conformable";           // conformable | caputo
    std::vector<double> domain{0.0, 1.0, 1.0};  // a, b, T
    int max_iter = 50;
    double tol = 1e-8;
    int resolution = 50;
    std::string out;
    std::string gnuplot;
    double slice_t = std::numeric_limits<double>::quiet_NaN();
    std::string data = "exact";  // exact | constant
    std::vector<int> n_list;
    std::vector<double> inject_errors;  // test hook: synthetic linf values
    double perturb = 0.0;               // test hook: kernel coefficient shift

    ProblemSpec to_problem_spec() const;
};

/// Exact-solution grid (or slice when slice_t is set) as nu,t,value CSV.
int cmd_exact(const RunConfig& config, std::ostream& log);
/// Full solve; writes the solution grid and prints an iteration summary plus
/// the L-inf distance from the reference field.
int cmd_solve(const RunConfig& config, std::ostream& log);
/// Three-block error table (alpha in {0.25, 0.5, 0.75}, five nu rows each).
int cmd_table1(const RunConfig& config, std::ostream& log);
/// (n, linf, order) rows over the configured n list plus monotonicity verdict.
int cmd_convergence(const RunConfig& config, std::ostream& log);
/// Reproducing/symmetry/PSD/continuity property suites; exit 4 on failure.
int cmd_kernel_check(const RunConfig& config, std::ostream& log);

/// Runs one subcommand, mapping library errors onto the exit-code contract.
int dispatch(const std::string& subcommand, const RunConfig& config,
             std::ostream& log);

}  // namespace rkvp::cli
