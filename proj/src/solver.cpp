#include "rkvp/solver.hpp"

#include <cmath>
#include <sstream>

#include "rkvp/tanh_method.hpp"
#include "parallel.hpp"

namespace rkvp {

void ProblemSpec::validate() const {
    if (n < 2) throw InputError("grid density n must be >= 2");
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    if (!(phi_floor > 0.0)) throw InputError("phi floor must be positive");
    if (max_outer_iters < 1) throw InputError("need at least one outer iteration");
    if (time.lo != 0.0) throw InputError("temporal domain must start at t = 0");
    if (time_refine < 1) throw InputError("time refinement factor must be >= 1");
}

BoundaryData build_boundary_data(const ProblemSpec& spec) {
    const double a = spec.space.lo, b = spec.space.hi;
    const double alpha = spec.alpha.value, c = spec.c;
    BoundaryData data;
    data.h1 = [alpha, c](double nu, int o) {
        return exact_solution_dnu(nu, 0.0, FractionalOrder(alpha), c, o);
    };
    data.h2 = [alpha, c, a](double t, int o) {
        return exact_solution_dnu(a, t, FractionalOrder(alpha), c, o);
    };
    data.h3 = [alpha, c, b](double t, int o) {
        return exact_solution_dnu(b, t, FractionalOrder(alpha), c, o);
    };
    data.g1 = [alpha, c](double nu, int o) {
        return exact_w_dnu(nu, 0.0, FractionalOrder(alpha), c, o);
    };
    data.g2 = [alpha, c, a](double t, int o) {
        return exact_w_dnu(a, t, FractionalOrder(alpha), c, o);
    };
    data.g3 = [alpha, c, b](double t, int o) {
        return exact_w_dnu(b, t, FractionalOrder(alpha), c, o);
    };
    check_compatibility(data, spec.space);
    return data;
}

BoundaryData constant_boundary_data(double phi_value, double w_value) {
    BoundaryData data;
    data.h1 = [phi_value](double, int o) { return o == 0 ? phi_value : 0.0; };
    data.h2 = data.h1;
    data.h3 = data.h1;
    data.g1 = [w_value](double, int o) { return o == 0 ? w_value : 0.0; };
    data.g2 = data.g1;
    data.g3 = data.g1;
    return data;
}

void check_compatibility(const BoundaryData& data, const Interval& space,
                         double tol) {
    const double a = space.lo, b = space.hi;
    const double e1 = std::abs(data.h2(0.0, 0) - data.h1(a, 0));
    const double e2 = std::abs(data.h3(0.0, 0) - data.h1(b, 0));
    const double e3 = std::abs(data.g2(0.0, 0) - data.g1(a, 0));
    const double e4 = std::abs(data.g3(0.0, 0) - data.g1(b, 0));
    if (e1 > tol || e2 > tol || e3 > tol || e4 > tol) {
        std::ostringstream msg;
        msg << "boundary data incompatible at the domain corners; deviations ("
            << e1 << ", " << e2 << ", " << e3 << ", " << e4 << ")";
        throw InputError(msg.str());
    }
}

double TransfiniteSurface::eval(double nu, double t, int dnu) const {
    const double a = space.lo, b = space.hi;
    switch (dnu) {
        case 0: {
            // Grouped so the lateral traces are hit exactly at nu = a, b.
            const double base = initial(nu, 0) - initial(a, 0);
            const double lam = (nu - a) / (b - a);
            const double bracket =
                (right(t, 0) - left(t, 0)) - (initial(b, 0) - initial(a, 0));
            return base + left(t, 0) + lam * bracket;
        }
        case 1: {
            const double bracket =
                (right(t, 0) - left(t, 0)) - (initial(b, 0) - initial(a, 0));
            return initial(nu, 1) + bracket / (b - a);
        }
        case 2:
            return initial(nu, 2);
        default:
            throw InputError("transfinite surface derivatives available to order 2");
    }
}

Homogenizer build_homogenizer(const BoundaryData& data, const Interval& space) {
    return Homogenizer{
        TransfiniteSurface{data.h1, data.h2, data.h3, space},
        TransfiniteSurface{data.g1, data.g2, data.g3, space},
    };
}

CollocationSet collocation_points(int n, Interval space, Interval time) {
    if (n < 2) throw InputError("collocation needs n >= 2");
    CollocationSet set;
    set.n = n;
    set.space = space;
    set.time = time;
    for (int i = 1; i < n; ++i)
        set.nus.push_back(space.lo + i * (space.hi - space.lo) / n);
    for (int j = 1; j <= n; ++j)
        set.ts.push_back(time.lo + j * (time.hi - time.lo) / n);
    for (double nu : set.nus)
        for (double t : set.ts) set.points.push_back({nu, t});
    return set;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& gram) {
    if (gram.rows() != gram.cols() || gram.rows() == 0)
        throw InputError("gram matrix must be square and non-empty");
    const auto m = gram.rows();
    Eigen::MatrixXd work = gram;
    const double jitter = 1e-12 * gram.trace() / static_cast<double>(m);
    for (int attempt = 0; attempt <= 3; ++attempt) {
        Eigen::LLT<Eigen::MatrixXd> llt(work);
        if (llt.info() == Eigen::Success) {
            Eigen::MatrixXd lower = llt.matrixL();
            return lower.triangularView<Eigen::Lower>().solve(
                Eigen::MatrixXd::Identity(m, m));
        }
        work.diagonal().array() += jitter;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    std::ostringstream msg;
    msg << "gram matrix is not positive definite after jitter retries; "
        << "size " << m << ", min eigenvalue " << es.eigenvalues().minCoeff()
        << ", max eigenvalue " << es.eigenvalues().maxCoeff();
    throw ConditioningError(msg.str());
}

BasisSystem::BasisSystem(CollocationSet colloc, PiecewisePolyKernel1D spatial,
                         PiecewisePolyKernel1D temporal)
    : colloc_(std::move(colloc)),
      spatial_kernel_(std::move(spatial)),
      temporal_kernel_(std::move(temporal)),
      smap_(affine_map(colloc_.space)),
      tmap_(affine_map(colloc_.time)) {
    const int ns = static_cast<int>(colloc_.nus.size());
    const int nt = static_cast<int>(colloc_.ts.size());

    Eigen::MatrixXd s_factor(ns, ns);
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ns; ++j)
            s_factor(i, j) = spatial_eval(colloc_.nus[i], colloc_.nus[j], 2);
    Eigen::MatrixXd t_factor(nt, nt);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < nt; ++j)
            t_factor(i, j) = temporal_eval(colloc_.ts[i], colloc_.ts[j]);

    const int m = ns * nt;
    gram_.resize(m, m);
    detail::parallel_for(static_cast<std::size_t>(m), [&](std::size_t row) {
        const int i = static_cast<int>(row) / nt, j = static_cast<int>(row) % nt;
        for (int col = 0; col < m; ++col)
            gram_(row, col) = s_factor(i, col / nt) * t_factor(j, col % nt);
    });
    beta_ = orthonormalize(gram_);
}

std::shared_ptr<const BasisSystem> BasisSystem::build(
    CollocationSet colloc, TemporalKernelChoice temporal) {
    auto temporal_kernel = temporal == TemporalKernelChoice::Homogenized
                               ? PiecewisePolyKernel1D::brownian()
                               : PiecewisePolyKernel1D::sobolev1();
    return std::shared_ptr<const BasisSystem>(new BasisSystem(
        std::move(colloc), PiecewisePolyKernel1D::sobolev3(),
        std::move(temporal_kernel)));
}

double BasisSystem::spatial_eval(double x, double z, int ds) const {
    return smap_.chain_factor(ds + 2) *
           spatial_kernel_.eval(smap_.to_unit(x), smap_.to_unit(z), ds, 2);
}

double BasisSystem::temporal_eval(double x, double u) const {
    return temporal_kernel_.eval(tmap_.to_unit(x), tmap_.to_unit(u), 0, 0);
}

double BasisSystem::psi(int i, Point2 x, int dnu) const {
    if (i < 0 || i >= size()) throw InputError("basis index out of range");
    const int nt = static_cast<int>(colloc_.ts.size());
    return spatial_eval(x.nu, colloc_.nus[i / nt], dnu) *
           temporal_eval(x.t, colloc_.ts[i % nt]);
}

SeriesSolution::SeriesSolution(std::shared_ptr<const BasisSystem> basis,
                               Eigen::VectorXd ortho_coeffs,
                               Eigen::VectorXd nodal_coeffs,
                               TransfiniteSurface offset, SeriesMetadata meta)
    : basis_(std::move(basis)),
      ortho_(std::move(ortho_coeffs)),
      nodal_(std::move(nodal_coeffs)),
      offset_(std::move(offset)),
      meta_(std::move(meta)) {}

double SeriesSolution::homogeneous(double nu, double t, int dnu) const {
    const auto& cs = basis_->collocation();
    const int ns = static_cast<int>(cs.nus.size());
    const int nt = static_cast<int>(cs.ts.size());
    std::vector<double> temporal(nt);
    for (int j = 0; j < nt; ++j) temporal[j] = basis_->temporal_eval(t, cs.ts[j]);
    double total = 0.0;
    for (int i = 0; i < ns; ++i) {
        const double sp = basis_->spatial_eval(nu, cs.nus[i], dnu);
        if (sp == 0.0) continue;
        double acc = 0.0;
        for (int j = 0; j < nt; ++j) acc += nodal_[i * nt + j] * temporal[j];
        total += sp * acc;
    }
    return total;
}

double SeriesSolution::value(double nu, double t) const {
    return homogeneous(nu, t, 0) + offset_.eval(nu, t, 0);
}

double SeriesSolution::deriv_nu(double nu, double t, int order) const {
    return homogeneous(nu, t, order) + offset_.eval(nu, t, order);
}

SeriesSolution solve_linear(std::shared_ptr<const BasisSystem> basis,
                            const Eigen::VectorXd& rhs_values,
                            TransfiniteSurface offset, SeriesMetadata meta) {
    if (rhs_values.size() != basis->size())
        throw InputError("rhs sample count must match the collocation set");
    const Eigen::MatrixXd& beta = basis->beta();
    Eigen::VectorXd ortho = beta.triangularView<Eigen::Lower>() * rhs_values;
    Eigen::VectorXd nodal = beta.transpose() * ortho;
    return SeriesSolution(std::move(basis), std::move(ortho), std::move(nodal),
                          std::move(offset), std::move(meta));
}

double collocation_residual(const SeriesSolution& series,
                            const Eigen::VectorXd& rhs_values) {
    const Eigen::VectorXd defect =
        series.basis().gram() * series.nodal_coefficients() - rhs_values;
    return defect.lpNorm<Eigen::Infinity>();
}

double rhs_functional(const FieldSample& phi, const FieldSample& w,
                      double f2_nunu, EquationSign sign, double phi_floor,
                      Point2 where) {
    if (std::abs(phi.value) < phi_floor) {
        std::ostringstream msg;
        msg << "phi iterate " << phi.value << " below floor " << phi_floor
            << " at (nu, t) = (" << where.nu << ", " << where.t << ")";
        throw SingularityError(msg.str(), where.nu, where.t);
    }
    if (sign == EquationSign::Corrected)
        return -f2_nunu + (phi.dnu * w.dnu - phi.value * phi.value * w.value) / phi.value;
    return -f2_nunu - (phi.dnu * w.dnu + phi.value * phi.value * w.value) / phi.value;
}

FieldOnGrid update_phi(const FieldOnGrid& w, DerivativeMode mode,
                       FractionalOrder alpha, const DiffFn& h1) {
    FieldOnGrid phi{w.nus, w.grid, {}};
    phi.values.resize(w.nus.size());
    detail::parallel_for(w.nus.size(), [&](std::size_t i) {
        SampledSignal sig(w.grid, w.values[i]);
        SampledSignal integral = mode == DerivativeMode::Conformable
                                     ? conformable_integral(sig, alpha, 0.0)
                                     : rl_integral(sig, alpha);
        const double base = h1(w.nus[i], 0);
        auto& column = phi.values[i];
        column.resize(integral.values.size());
        for (std::size_t k = 0; k < column.size(); ++k)
            column[k] = base + integral.values[k];
    });
    return phi;
}

namespace {

// Derivative shift: view h(., order + shift) as a plain value function.
DiffFn shift_order(const DiffFn& f, int shift) {
    return [f, shift](double x, int order) { return f(x, order + shift); };
}

}  // namespace

VPSolution solve_vp(const ProblemSpec& spec) {
    return solve_vp(spec, build_boundary_data(spec));
}

VPSolution solve_vp(const ProblemSpec& spec, const BoundaryData& data) {
    spec.validate();
    check_compatibility(data, spec.space);

    const Homogenizer homog = build_homogenizer(data, spec.space);
    CollocationSet colloc = collocation_points(spec.n, spec.space, spec.time);
    auto basis = BasisSystem::build(std::move(colloc), spec.temporal_kernel);
    const auto& cs = basis->collocation();
    const int m = basis->size();
    const int ns = static_cast<int>(cs.nus.size());
    const int nt = static_cast<int>(cs.ts.size());

    const TimeGrid fine(spec.time.hi, spec.time_refine * spec.n);
    // Collocation node t_j lies at fine index j * time_refine.
    auto fine_index = [&](int j) { return (j + 1) * spec.time_refine; };

    SeriesMetadata meta;
    meta.alpha = spec.alpha.value;
    meta.n = spec.n;
    meta.mode = spec.mode;

    // Iterate samples at the collocation points; the zeroth iterate is the
    // homogenization surface itself (series part zero).
    Eigen::VectorXd phi_v(m), phi_d(m), w_v(m), w_d(m), f2dd(m), f1dd(m);
    for (int idx = 0; idx < m; ++idx) {
        const Point2 p = cs.points[idx];
        phi_v[idx] = homog.f1.eval(p.nu, p.t, 0);
        phi_d[idx] = homog.f1.eval(p.nu, p.t, 1);
        w_v[idx] = homog.f2.eval(p.nu, p.t, 0);
        w_d[idx] = homog.f2.eval(p.nu, p.t, 1);
        f2dd[idx] = homog.f2.eval(p.nu, p.t, 2);
        f1dd[idx] = homog.f1.eval(p.nu, p.t, 2);
    }

    IterationReport report;
    std::unique_ptr<SeriesSolution> w_series;
    FieldOnGrid phinunu_grid{cs.nus, fine, {}};

    for (int iter = 0; iter < spec.max_outer_iters; ++iter) {
        Eigen::VectorXd rhs(m);
        for (int idx = 0; idx < m; ++idx)
            rhs[idx] = rhs_functional({phi_v[idx], phi_d[idx]},
                                      {w_v[idx], w_d[idx]}, f2dd[idx], spec.sign,
                                      spec.phi_floor, cs.points[idx]);

        meta.iterations = iter + 1;
        meta.residual_history = report.phi_change;
        w_series = std::make_unique<SeriesSolution>(
            solve_linear(basis, rhs, homog.f2, meta));
        report.collocation_residuals.push_back(
            collocation_residual(*w_series, rhs));

        // Sample w and its first two spatial derivatives on the fine grid and
        // integrate in time.
        FieldOnGrid wg{cs.nus, fine, {}}, wng{cs.nus, fine, {}},
            wnng{cs.nus, fine, {}};
        wg.values.resize(ns);
        wng.values.resize(ns);
        wnng.values.resize(ns);
        detail::parallel_for(static_cast<std::size_t>(ns), [&](std::size_t i) {
            wg.values[i].resize(fine.size());
            wng.values[i].resize(fine.size());
            wnng.values[i].resize(fine.size());
            for (int k = 0; k < fine.size(); ++k) {
                const double t = fine.node(k);
                wg.values[i][k] = w_series->deriv_nu(cs.nus[i], t, 0);
                wng.values[i][k] = w_series->deriv_nu(cs.nus[i], t, 1);
                wnng.values[i][k] = w_series->deriv_nu(cs.nus[i], t, 2);
            }
        });
        FieldOnGrid phi_grid = update_phi(wg, spec.mode, spec.alpha, data.h1);
        FieldOnGrid phinu_grid =
            update_phi(wng, spec.mode, spec.alpha, shift_order(data.h1, 1));
        phinunu_grid =
            update_phi(wnng, spec.mode, spec.alpha, shift_order(data.h1, 2));

        double change = 0.0;
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < nt; ++j) {
                const int idx = i * nt + j;
                const double next = phi_grid.values[i][fine_index(j)];
                change = std::max(change, std::abs(next - phi_v[idx]));
                phi_v[idx] = next;
                phi_d[idx] = phinu_grid.values[i][fine_index(j)];
            }
        for (int idx = 0; idx < m; ++idx) {
            const Point2 p = cs.points[idx];
            w_v[idx] = w_series->deriv_nu(p.nu, p.t, 0);
            w_d[idx] = w_series->deriv_nu(p.nu, p.t, 1);
        }

        report.phi_change.push_back(change);
        report.iterations = iter + 1;
        if (change < spec.tol) {
            report.converged = true;
            break;
        }
    }

    // Written as a series: collocate the second spatial derivative of the
    // integrated phi field.
    Eigen::VectorXd rhs_phi(m);
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j)
            rhs_phi[i * nt + j] =
                phinunu_grid.values[i][fine_index(j)] - f1dd[i * nt + j];
    meta.iterations = report.iterations;
    meta.residual_history = report.phi_change;
    SeriesSolution phi_series = solve_linear(basis, rhs_phi, homog.f1, meta);
    SeriesSolution w_final(*w_series);

    // Snapshot of the returned series on the coarse grid (t = 0 included).
    FieldOnGrid snapshot{cs.nus, TimeGrid(spec.time.hi, spec.n), {}};
    snapshot.values.resize(ns);
    for (int i = 0; i < ns; ++i) {
        snapshot.values[i].resize(spec.n + 1);
        for (int j = 0; j <= spec.n; ++j)
            snapshot.values[i][j] =
                phi_series.value(cs.nus[i], snapshot.grid.node(j));
    }

    return VPSolution{std::move(w_final), std::move(phi_series),
                      std::move(snapshot), std::move(report)};
}

double evaluate_solution(const SeriesSolution& solution, double nu, double t) {
    const auto& cs = solution.basis().collocation();
    if (!cs.space.contains(nu) || !cs.time.contains(t))
        throw InputError("evaluation point outside the closed domain");
    return solution.value(nu, t);
}

}  // namespace rkvp
