#include "rkvp/cli.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "rkvp/analysis.hpp"
#include "rkvp/tanh_method.hpp"

namespace rkvp::cli {

namespace {

std::ofstream open_output(const std::string& path) {
    if (path.empty()) throw IoError("no output path given (--out)");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

void maybe_write_gnuplot(const RunConfig& config, const std::string& title) {
    if (config.gnuplot.empty()) return;
    std::ofstream out = open_output(config.gnuplot);
    out << gnuplot_script(config.out, title);
    finish_output(out, config.gnuplot);
}

Field2D exact_field(const ProblemSpec& spec) {
    return [alpha = spec.alpha.value, c = spec.c](double nu, double t) {
        return exact_solution(nu, t, FractionalOrder(alpha), c);
    };
}

}  // namespace

ProblemSpec RunConfig::to_problem_spec() const {
    if (domain.size() != 3)
        throw InputError("--domain expects three values a,b,T");
    ProblemSpec spec;
    spec.alpha = FractionalOrder(alpha);
    spec.space = Interval(domain[0], domain[1]);
    spec.time = Interval(0.0, domain[2]);
    spec.n = n;
    spec.c = c;
    if (mode == "conformable")
        spec.mode = DerivativeMode::Conformable;
    else if (mode == "caputo")
        spec.mode = DerivativeMode::Caputo;
    else
        throw InputError("mode must be conformable or caputo");
    spec.max_outer_iters = max_iter;
    spec.tol = tol;
    spec.validate();
    return spec;
}

int cmd_exact(const RunConfig& config, std::ostream& log) {
    const ProblemSpec spec = config.to_problem_spec();
    const Field2D field = exact_field(spec);
    const GridData grid =
        std::isnan(config.slice_t)
            ? surface_export(field, spec.space, spec.time, config.resolution)
            : slice_export(field, spec.space, config.slice_t, config.resolution);

    std::ofstream out = open_output(config.out);
    write_grid_csv(out, grid);
    finish_output(out, config.out);
    maybe_write_gnuplot(config, "exact solution");
    log << "wrote " << grid.rows.size() << " rows to " << config.out << "\n";
    return kExitOk;
}

int cmd_solve(const RunConfig& config, std::ostream& log) {
    const ProblemSpec spec = config.to_problem_spec();

    VPSolution solution = config.data == "constant"
                              ? solve_vp(spec, constant_boundary_data(6.0))
                              : solve_vp(spec);

    const Field2D reference =
        config.data == "constant" ? Field2D([](double, double) { return 6.0; })
                                  : exact_field(spec);
    const Field2D approx = [&solution](double nu, double t) {
        return evaluate_solution(solution.phi, nu, t);
    };

    const GridData grid =
        surface_export(approx, spec.space, spec.time, config.resolution);
    std::ofstream out = open_output(config.out);
    write_grid_csv(out, grid);
    finish_output(out, config.out);
    maybe_write_gnuplot(config, "RKHS solution");

    double linf = 0.0;
    for (const auto& row : grid.rows)
        linf = std::max(linf, std::abs(row[2] - reference(row[0], row[1])));

    const auto& report = solution.report;
    log << "iterations = " << report.iterations
        << ", converged = " << (report.converged ? "true" : "false")
        << ", final change = "
        << (report.phi_change.empty() ? 0.0 : report.phi_change.back())
        << ", max collocation residual = "
        << (report.collocation_residuals.empty()
                ? 0.0
                : *std::max_element(report.collocation_residuals.begin(),
                                    report.collocation_residuals.end()))
        << "\n";
    log << "L_inf vs " << (config.data == "constant" ? "constant" : "exact")
        << " = " << linf << "\n";
    return kExitOk;
}

int cmd_table1(const RunConfig& config, std::ostream& log) {
    ProblemSpec base = config.to_problem_spec();
    const std::vector<ErrorReport> reports = table1_report(base);

    std::vector<ErrorRow> rows;
    for (const auto& report : reports)
        rows.insert(rows.end(), report.rows.begin(), report.rows.end());

    std::ofstream out = open_output(config.out);
    write_error_csv(out, rows);
    finish_output(out, config.out);
    for (const auto& report : reports)
        log << "alpha = " << report.rows.front().alpha
            << ": L_inf = " << report.linf << "\n";
    return kExitOk;
}

int cmd_convergence(const RunConfig& config, std::ostream& log) {
    if (config.n_list.size() < 2)
        throw InputError("--n-list needs at least two grid densities");

    ConvergenceStudy study;
    if (!config.inject_errors.empty()) {
        if (config.inject_errors.size() != config.n_list.size())
            throw InputError("--inject-errors must match --n-list in length");
        for (std::size_t i = 0; i < config.n_list.size(); ++i)
            study.entries.emplace_back(config.n_list[i], config.inject_errors[i]);
        for (std::size_t i = 0; i + 1 < study.entries.size(); ++i)
            study.orders.push_back(convergence_order(
                study.entries[i].second, study.entries[i + 1].second));
    } else {
        const ProblemSpec base = config.to_problem_spec();
        study = convergence_study(base, config.n_list, 0.5, config.resolution);
    }

    std::ofstream out = open_output(config.out);
    write_convergence_csv(out, study);
    finish_output(out, config.out);

    const MonotonicityResult verdict = monotonicity_check(study);
    log << "monotone: " << (verdict.monotone ? "true" : "false") << "\n";
    for (const auto& v : verdict.violations) log << "  " << v << "\n";
    return kExitOk;
}

namespace {

struct PropertyLine {
    std::string name;
    double deviation;
    double bound;
    bool pass() const { return deviation <= bound; }
};

// <f, K_z> - f(z) over the z grid for the order-3 kernel under the full
// order-3 inner product; test functions vanish at both endpoints.
double reproducing_deviation_w3(const PiecewisePolyKernel1D& kernel) {
    struct Case {
        DiffFn f;
        std::function<double(double)> value;
    };
    std::vector<Case> cases;
    cases.push_back({[](double s, int o) {
                         switch (o) {
                             case 0: return s * (1.0 - s);
                             case 1: return 1.0 - 2.0 * s;
                             case 2: return -2.0;
                             default: return 0.0;
                         }
                     },
                     [](double z) { return z * (1.0 - z); }});
    cases.push_back({[](double s, int o) {
                         switch (o) {
                             case 0: return s * s * (1.0 - s);
                             case 1: return 2.0 * s - 3.0 * s * s;
                             case 2: return 2.0 - 6.0 * s;
                             case 3: return -6.0;
                             default: return 0.0;
                         }
                     },
                     [](double z) { return z * z * (1.0 - z); }});
    cases.push_back({[](double s, int o) {
                         const double u = 1.0 - s;
                         switch (o) {
                             case 0: return s * s * u * u;
                             case 1: return 2.0 * s - 6.0 * s * s + 4.0 * s * s * s;
                             case 2: return 2.0 - 12.0 * s + 12.0 * s * s;
                             case 3: return -12.0 + 24.0 * s;
                             default: return 0.0;
                         }
                     },
                     [](double z) { return z * z * (1.0 - z) * (1.0 - z); }});
    cases.push_back({[](double s, int o) {
                         const double pi = std::acos(-1.0);
                         const double scale = std::pow(pi, o);
                         switch (o % 4) {
                             case 0: return scale * std::sin(pi * s);
                             case 1: return scale * std::cos(pi * s);
                             case 2: return -scale * std::sin(pi * s);
                             default: return -scale * std::cos(pi * s);
                         }
                     },
                     [](double z) { return std::sin(std::acos(-1.0) * z); }});

    double worst = 0.0;
    for (int zi = 1; zi <= 9; ++zi) {
        const double z = zi / 10.0;
        InnerProductSpec spec;
        spec.order = 3;
        spec.breakpoints = {z};
        const DiffFn section = kernel_section(kernel, z);
        for (const auto& c : cases) {
            const double ip = sobolev_inner_product(c.f, section, spec);
            worst = std::max(worst, std::abs(ip - c.value(z)));
        }
    }
    return worst;
}

double reproducing_deviation_w1(const PiecewisePolyKernel1D& kernel) {
    struct Case {
        DiffFn f;
        std::function<double(double)> value;
    };
    std::vector<Case> cases;
    cases.push_back({[](double s, int o) { return o == 0 ? s : (o == 1 ? 1.0 : 0.0); },
                     [](double z) { return z; }});
    cases.push_back({[](double s, int o) {
                         switch (o) {
                             case 0: return 1.0 + s * s;
                             case 1: return 2.0 * s;
                             default: return 2.0;
                         }
                     },
                     [](double z) { return 1.0 + z * z; }});
    cases.push_back({[](double s, int o) {
                         switch (o) {
                             case 0: return std::exp(s);
                             default: return std::exp(s);
                         }
                     },
                     [](double z) { return std::exp(z); }});

    double worst = 0.0;
    for (int zi = 1; zi <= 9; ++zi) {
        const double z = zi / 10.0;
        InnerProductSpec spec;
        spec.order = 1;
        spec.breakpoints = {z};
        const DiffFn section = kernel_section(kernel, z);
        for (const auto& c : cases) {
            const double ip = sobolev_inner_product(c.f, section, spec);
            worst = std::max(worst, std::abs(ip - c.value(z)));
        }
    }
    return worst;
}

double symmetry_deviation(const PiecewisePolyKernel1D& kernel) {
    std::mt19937 rng(20230901);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double s = unit(rng), z = unit(rng);
        worst = std::max(worst, std::abs(kernel.eval(s, z) - kernel.eval(z, s)));
    }
    return worst;
}

double psd_deviation(const PiecewisePolyKernel1D& kernel) {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        const int m = 4 + 3 * rep;
        std::vector<double> pts(m);
        for (auto& p : pts) p = unit(rng);
        Eigen::MatrixXd gram(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) gram(i, j) = kernel.eval(pts[i], pts[j]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        worst = std::max(worst, std::max(0.0, -es.eigenvalues().minCoeff()));
    }
    return worst;
}

double continuity_deviation(const PiecewisePolyKernel1D& kernel) {
    double worst = 0.0;
    for (int si = 1; si <= 9; ++si) {
        const double s = si / 10.0;
        for (int ds = 0; ds <= 4; ++ds)
            for (int dz = 0; ds + dz <= 4; ++dz) {
                const double low = kernel.eval_on_branch(
                    PiecewisePolyKernel1D::Branch::Low, s, s, ds, dz);
                const double high = kernel.eval_on_branch(
                    PiecewisePolyKernel1D::Branch::High, s, s, ds, dz);
                worst = std::max(worst, std::abs(low - high));
            }
    }
    return worst;
}

}  // namespace

int cmd_kernel_check(const RunConfig& config, std::ostream& log) {
    PiecewisePolyKernel1D w3 = PiecewisePolyKernel1D::sobolev3();
    if (config.perturb != 0.0) w3 = w3.perturbed(1, 1, config.perturb);
    const PiecewisePolyKernel1D w1 = PiecewisePolyKernel1D::sobolev1();

    const std::vector<PropertyLine> lines = {
        {"reproducing-constrained-w3", reproducing_deviation_w3(w3), 1e-8},
        {"reproducing-w1", reproducing_deviation_w1(w1), 1e-8},
        {"symmetry", symmetry_deviation(w3), 1e-12},
        {"positive-semidefinite", psd_deviation(w3), 1e-10},
        {"diagonal-continuity", continuity_deviation(w3), 1e-9},
    };

    bool all_pass = true;
    for (const auto& line : lines) {
        log << line.name << ": max deviation " << csv_number(line.deviation)
            << " (bound " << csv_number(line.bound) << ") "
            << (line.pass() ? "[PASS]" : "[FAIL]") << "\n";
        all_pass = all_pass && line.pass();
    }
    if (!all_pass) {
        log << "kernel property check failed\n";
        return kExitProperty;
    }
    return kExitOk;
}

int dispatch(const std::string& subcommand, const RunConfig& config,
             std::ostream& log) {
    try {
        if (subcommand == "exact") return cmd_exact(config, log);
        if (subcommand == "solve") return cmd_solve(config, log);
        if (subcommand == "table1") return cmd_table1(config, log);
        if (subcommand == "convergence") return cmd_convergence(config, log);
        if (subcommand == "kernel-check") return cmd_kernel_check(config, log);
        throw InputError("unknown subcommand: " + subcommand);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const SingularityError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const ConditioningError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const NoConvergenceError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const InputError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
}

}  // namespace rkvp::cli
