#include "rkvp/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "rkvp/tanh_method.hpp"

namespace rkvp {

double linf_error(std::span<const double> exact, std::span<const double> approx) {
    if (exact.size() != approx.size())
        throw InputError("linf_error needs equal-length sample sets");
    double worst = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i)
        worst = std::max(worst, std::abs(exact[i] - approx[i]));
    return worst;
}

double convergence_order(double linf_half, double linf_full) {
    if (!(linf_half > 0.0) || !(linf_full > 0.0))
        throw InputError("convergence order needs positive error norms");
    return std::log(linf_half / linf_full) / std::log(2.0);
}

std::vector<ErrorReport> table1_report(const ProblemSpec& base) {
    std::vector<ErrorReport> reports;
    for (double alpha : {0.25, 0.5, 0.75}) {
        ProblemSpec spec = base;
        spec.alpha = FractionalOrder(alpha);
        spec.n = 6;
        const VPSolution solution = solve_vp(spec);

        ErrorReport report;
        report.n = spec.n;
        const double t = 0.5;
        for (int i = 1; i <= 5; ++i) {
            const double nu =
                spec.space.lo + i * (spec.space.hi - spec.space.lo) / 6.0;
            const double exact = exact_solution(nu, t, spec.alpha, spec.c);
            const double approx = evaluate_solution(solution.phi, nu, t);
            report.rows.push_back(
                {nu, t, alpha, exact, approx, std::abs(exact - approx)});
            report.linf = std::max(report.linf, std::abs(exact - approx));
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

GridData surface_export(const Field2D& field, Interval space, Interval time,
                        int resolution) {
    if (resolution < 2) throw InputError("resolution must be >= 2 per axis");
    GridData grid;
    grid.rows.reserve(static_cast<std::size_t>(resolution) * resolution);
    for (int i = 0; i < resolution; ++i) {
        const double nu = space.lo + i * (space.hi - space.lo) / (resolution - 1);
        for (int j = 0; j < resolution; ++j) {
            const double t = time.lo + j * (time.hi - time.lo) / (resolution - 1);
            grid.rows.push_back({nu, t, field(nu, t)});
        }
    }
    return grid;
}

GridData slice_export(const Field2D& field, Interval space, double t,
                      int resolution) {
    if (resolution < 2) throw InputError("resolution must be >= 2");
    GridData grid;
    grid.rows.reserve(resolution);
    for (int i = 0; i < resolution; ++i) {
        const double nu = space.lo + i * (space.hi - space.lo) / (resolution - 1);
        grid.rows.push_back({nu, t, field(nu, t)});
    }
    return grid;
}

std::vector<ErrorRow> error_curve(const Field2D& exact, const Field2D& approx,
                                  double alpha, Interval space, double t,
                                  int resolution) {
    if (resolution < 2) throw InputError("resolution must be >= 2");
    std::vector<ErrorRow> rows;
    rows.reserve(resolution);
    for (int i = 0; i < resolution; ++i) {
        const double nu = space.lo + i * (space.hi - space.lo) / (resolution - 1);
        const double e = exact(nu, t), a = approx(nu, t);
        rows.push_back({nu, t, alpha, e, a, std::abs(e - a)});
    }
    return rows;
}

MonotonicityResult monotonicity_check(const ConvergenceStudy& study) {
    if (study.entries.size() < 2)
        throw InputError("monotonicity check needs at least two entries");
    MonotonicityResult result;
    for (std::size_t i = 0; i + 1 < study.entries.size(); ++i) {
        const auto& [n0, e0] = study.entries[i];
        const auto& [n1, e1] = study.entries[i + 1];
        if (n1 <= n0) throw InputError("study entries must have increasing n");
        if (e1 > 1.1 * e0) {
            result.monotone = false;
            std::ostringstream msg;
            msg << "linf rose from " << e0 << " (n=" << n0 << ") to " << e1
                << " (n=" << n1 << ")";
            result.violations.push_back(msg.str());
        }
    }
    return result;
}

double solution_linf(const VPSolution& solution, const ProblemSpec& spec,
                     double t, int resolution) {
    std::vector<double> exact, approx;
    exact.reserve(resolution);
    approx.reserve(resolution);
    for (int i = 0; i < resolution; ++i) {
        const double nu =
            spec.space.lo + i * (spec.space.hi - spec.space.lo) / (resolution - 1);
        exact.push_back(exact_solution(nu, t, spec.alpha, spec.c));
        approx.push_back(evaluate_solution(solution.phi, nu, t));
    }
    return linf_error(exact, approx);
}

ConvergenceStudy convergence_study(const ProblemSpec& base,
                                   const std::vector<int>& ns, double t,
                                   int resolution) {
    if (ns.size() < 2)
        throw InputError("convergence study needs at least two grid densities");
    for (std::size_t i = 0; i + 1 < ns.size(); ++i)
        if (ns[i + 1] <= ns[i])
            throw InputError("grid densities must be strictly increasing");

    ConvergenceStudy study;
    for (int n : ns) {
        ProblemSpec spec = base;
        spec.n = n;
        const VPSolution solution = solve_vp(spec);
        study.entries.emplace_back(n, solution_linf(solution, spec, t, resolution));
    }
    for (std::size_t i = 0; i + 1 < study.entries.size(); ++i)
        study.orders.push_back(convergence_order(study.entries[i].second,
                                                 study.entries[i + 1].second));
    return study;
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_error_csv(std::ostream& out, std::span<const ErrorRow> rows) {
    out << "nu,t,alpha,exact,approx,abs_error\n";
    for (const auto& r : rows)
        out << csv_number(r.nu) << ',' << csv_number(r.t) << ','
            << csv_number(r.alpha) << ',' << csv_number(r.exact) << ','
            << csv_number(r.approx) << ',' << csv_number(r.abs_error) << '\n';
}

void write_grid_csv(std::ostream& out, const GridData& grid) {
    out << "nu,t,value\n";
    for (const auto& r : grid.rows)
        out << csv_number(r[0]) << ',' << csv_number(r[1]) << ','
            << csv_number(r[2]) << '\n';
}

void write_convergence_csv(std::ostream& out, const ConvergenceStudy& study) {
    out << "n,linf,order\n";
    for (std::size_t i = 0; i < study.entries.size(); ++i) {
        out << study.entries[i].first << ','
            << csv_number(study.entries[i].second) << ',';
        // No order for the first entry; keep the column rectangular.
        out << (i == 0 ? std::string("nan") : csv_number(study.orders[i - 1]))
            << '\n';
    }
}

std::string gnuplot_script(const std::string& csv_path, const std::string& title) {
    std::ostringstream out;
    out << "set datafile separator ','\n"
        << "set title '" << title << "'\n"
        << "set xlabel 'nu'\n"
        << "set ylabel 't'\n"
        << "set dgrid3d\n"
        << "splot '" << csv_path << "' every ::1 using 1:2:3 with lines notitle\n";
    return out.str();
}

}  // namespace rkvp
