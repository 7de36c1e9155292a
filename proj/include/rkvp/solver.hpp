#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "rkvp/fractional.hpp"
#include "rkvp/kernels.hpp"

namespace rkvp {

/// Which fractional coupling inverts w = D_t^alpha Phi.
enum class DerivativeMode { Conformable, Caputo };

/// Sign convention of the first-order w-equation. Corrected is the form the
/// exact soliton satisfies; PaperPlus keeps the printed plus signs for
/// comparison runs.
enum class EquationSign { Corrected, PaperPlus };

/// Temporal trial-space kernel: Homogenized = min(t,u) (vanishes at t = 0),
/// Literal = 1 + min(t,u) for comparison.
enum class TemporalKernelChoice { Homogenized, Literal };

struct ProblemSpec {
    FractionalOrder alpha{0.5};
    Interval space{0.0, 1.0};
    Interval time{0.0, 1.0};
    int n = 6;
    double c = 0.001;
    DerivativeMode mode = DerivativeMode::Conformable;
    int max_outer_iters = 50;
    double tol = 1e-8;
    double phi_floor = 1e-6;
    EquationSign sign = EquationSign::Corrected;
    TemporalKernelChoice temporal_kernel = TemporalKernelChoice::Homogenized;
    int time_refine = 16;  // fine integration grid has time_refine * n steps

    void validate() const;
};

/// Initial/boundary traces for Phi (h1, h2, h3) and for w (g1, g2, g3).
/// h1 and g1 must supply spatial derivatives to order 2.
struct BoundaryData {
    DiffFn h1, h2, h3;
    DiffFn g1, g2, g3;
};

/// Traces sampled from the exact soliton (the default test problem).
BoundaryData build_boundary_data(const ProblemSpec& spec);
/// Constant-field data, mainly for smoke runs: Phi == phi_value, w == w_value.
BoundaryData constant_boundary_data(double phi_value, double w_value = 0.0);
/// Corner-compatibility check; throws InputError beyond tolerance.
void check_compatibility(const BoundaryData& data, const Interval& space,
                         double tol = 1e-10);

/// Transfinite interpolant of one field's three traces:
///   f(nu,t) = h1(nu) + h2(t) - h1(a) + (nu-a)/(b-a) * [h3(t) - h2(t) - h1(b) + h1(a)].
/// Matches h1 at t = 0 and h2/h3 on the lateral boundaries; spatial
/// derivatives are analytic.
struct TransfiniteSurface {
    DiffFn initial;  // h1
    DiffFn left;     // h2
    DiffFn right;    // h3
    Interval space{0.0, 1.0};

    double eval(double nu, double t, int dnu = 0) const;
};

struct Homogenizer {
    TransfiniteSurface f1;  // Phi data
    TransfiniteSurface f2;  // w data
};

Homogenizer build_homogenizer(const BoundaryData& data, const Interval& space);

/// Tensor collocation grid: nu interior (the spatial kernel vanishes on the
/// boundary), t in (0,T] (the temporal trial space vanishes at t = 0).
/// Row-major ordering: index m = (i-1)*n + (j-1).
struct CollocationSet {
    std::vector<Point2> points;
    std::vector<double> nus;  // i = 1..n-1
    std::vector<double> ts;   // j = 1..n
    int n = 0;
    Interval space{0.0, 1.0};
    Interval time{0.0, 1.0};
};

CollocationSet collocation_points(int n, Interval space, Interval time);

/// Lower-triangular beta with beta * G * beta^T = I, via Cholesky. Retries
/// with diagonal jitter 1e-12*trace/M up to three times before giving up.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& gram);

/// Collocation trial system psi_i = (d^2/dz^2 applied to the kernel's second
/// argument) at the i-th point, with the Gram matrix assembled from the
/// closed-form identity <psi_i, psi_j> = (L psi_j)(p_i).
class BasisSystem {
public:
    static std::shared_ptr<const BasisSystem> build(
        CollocationSet colloc,
        TemporalKernelChoice temporal = TemporalKernelChoice::Homogenized);

    /// psi_i and its spatial derivatives (dnu = 0..2).
    double psi(int i, Point2 x, int dnu = 0) const;

    /// Spatial profile d^(ds)/ds^(ds) of [d^2_z K](x, z) including chain factors.
    double spatial_eval(double x, double z, int ds) const;
    double temporal_eval(double x, double u) const;

    const Eigen::MatrixXd& gram() const { return gram_; }
    const Eigen::MatrixXd& beta() const { return beta_; }
    const CollocationSet& collocation() const { return colloc_; }
    int size() const { return static_cast<int>(colloc_.points.size()); }

private:
    BasisSystem(CollocationSet colloc, PiecewisePolyKernel1D spatial,
                PiecewisePolyKernel1D temporal);

    CollocationSet colloc_;
    PiecewisePolyKernel1D spatial_kernel_;
    PiecewisePolyKernel1D temporal_kernel_;
    AffineMap smap_;
    AffineMap tmap_;
    Eigen::MatrixXd gram_;
    Eigen::MatrixXd beta_;
};

struct SeriesMetadata {
    double alpha = 0.5;
    int n = 0;
    DerivativeMode mode = DerivativeMode::Conformable;
    int iterations = 0;
    std::vector<double> residual_history;
};

/// Series in the orthonormalized trial system plus a homogenization offset.
/// The homogeneous part vanishes identically on nu = a, nu = b and t = 0.
class SeriesSolution {
public:
    SeriesSolution(std::shared_ptr<const BasisSystem> basis,
                   Eigen::VectorXd ortho_coeffs, Eigen::VectorXd nodal_coeffs,
                   TransfiniteSurface offset, SeriesMetadata meta);

    double value(double nu, double t) const;
    /// Spatial derivative of order 0..2 (series + offset).
    double deriv_nu(double nu, double t, int order) const;
    /// Series part only.
    double homogeneous(double nu, double t, int dnu = 0) const;

    const Eigen::VectorXd& coefficients() const { return ortho_; }
    const Eigen::VectorXd& nodal_coefficients() const { return nodal_; }
    const BasisSystem& basis() const { return *basis_; }
    const TransfiniteSurface& offset() const { return offset_; }
    const SeriesMetadata& metadata() const { return meta_; }

private:
    std::shared_ptr<const BasisSystem> basis_;
    Eigen::VectorXd ortho_;  // coefficients of the orthonormalized system
    Eigen::VectorXd nodal_;  // beta^T * ortho: coefficients of the raw psi_i
    TransfiniteSurface offset_;
    SeriesMetadata meta_;
};

/// Interpolates the collocation equation (d^2/dnu^2) u = F: the orthonormal
/// coefficients are A_i = sum_{k<=i} beta_ik F(p_k).
SeriesSolution solve_linear(std::shared_ptr<const BasisSystem> basis,
                            const Eigen::VectorXd& rhs_values,
                            TransfiniteSurface offset, SeriesMetadata meta);

/// Max-abs collocation defect |(L u)(p_j) - F(p_j)| over all points.
double collocation_residual(const SeriesSolution& series,
                            const Eigen::VectorXd& rhs_values);

struct FieldSample {
    double value = 0.0;
    double dnu = 0.0;
};

/// Right-hand side of the collocated w-equation at one point, built from the
/// previous iterate. Throws SingularityError if |phi| drops below the floor.
double rhs_functional(const FieldSample& phi, const FieldSample& w,
                      double f2_nunu, EquationSign sign, double phi_floor,
                      Point2 where);

/// A field sampled on a time grid per spatial node.
struct FieldOnGrid {
    std::vector<double> nus;
    TimeGrid grid;
    std::vector<std::vector<double>> values;  // [node][time index]
};

/// Phi(nu_i, t) = h1(nu_i) + fractional integral of w(nu_i, .) in time.
FieldOnGrid update_phi(const FieldOnGrid& w, DerivativeMode mode,
                       FractionalOrder alpha, const DiffFn& h1);

struct IterationReport {
    int iterations = 0;
    bool converged = false;
    std::vector<double> phi_change;
    std::vector<double> collocation_residuals;
};

struct VPSolution {
    SeriesSolution w;
    SeriesSolution phi;
    FieldOnGrid phi_samples;  // snapshot of the phi series on the coarse grid
    IterationReport report;
};

/// Outer fixed-point loop coupling the collocated w-equation with fractional
/// time integration for Phi.
VPSolution solve_vp(const ProblemSpec& spec);
VPSolution solve_vp(const ProblemSpec& spec, const BoundaryData& data);

/// Series value + homogenization offset, with a closed-domain check.
double evaluate_solution(const SeriesSolution& solution, double nu, double t);

}  // namespace rkvp
