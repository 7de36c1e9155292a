#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "rkvp/errors.hpp"

namespace rkvp {

/// A function together with its derivatives: call as f(x, order).
using DiffFn = std::function<double(double, int)>;

struct Interval {
    double lo;
    double hi;

    Interval(double lo, double hi) : lo(lo), hi(hi) {
        if (!(lo < hi)) throw InputError("Interval requires lo < hi");
    }
    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Affine change of variables between an interval and [0,1].
struct AffineMap {
    double lo = 0.0;
    double hi = 1.0;

    double to_unit(double x) const { return (x - lo) / (hi - lo); }
    double from_unit(double u) const { return lo + u * (hi - lo); }
    /// du/dx; each derivative taken in unit coordinates picks up one factor.
    double jacobian() const { return 1.0 / (hi - lo); }
    double chain_factor(int order) const;
};

AffineMap affine_map(const Interval& domain);

/// A symmetric reproducing kernel on [0,1] stored as two bivariate polynomial
/// branches: branch_low applies for s <= z, branch_high for s > z. Coefficients
/// are exact integers over a common denominator, so evaluation of the stock
/// kernels is free of transcription rounding.
class PiecewisePolyKernel1D {
public:
    static constexpr int kMaxDegree = 6;  // coefficients for s^0..s^5, z^0..z^5
    using CoeffMatrix = std::array<std::array<double, kMaxDegree>, kMaxDegree>;

    enum class Branch { Low, High };

    /// Order-3 Sobolev kernel on [0,1] vanishing at both endpoints.
    static PiecewisePolyKernel1D sobolev3();
    /// Order-1 Sobolev kernel 1 + min(s,z).
    static PiecewisePolyKernel1D sobolev1();
    /// min(s,z): order-1 kernel of the subspace {f : f(0) = 0}.
    static PiecewisePolyKernel1D brownian();

    /// Evaluates d^ds/ds^ds d^dz/dz^dz K(s,z). At s == z the low branch is used.
    double eval(double s, double z, int ds = 0, int dz = 0) const;

    /// Evaluates a specific branch regardless of the s/z ordering (used by the
    /// diagonal-continuity checks).
    double eval_on_branch(Branch which, double s, double z, int ds, int dz) const;

    int smoothness_order() const { return smoothness_order_; }
    const std::vector<double>& vanishes_at() const { return vanishes_at_; }
    const CoeffMatrix& branch_low() const { return low_; }
    const CoeffMatrix& branch_high() const { return high_; }
    double denominator() const { return den_; }

    /// Returns a copy with coefficient (i,j) of both branches shifted by eps
    /// (symmetrically, so only the reproducing property breaks). Test hook for
    /// the kernel-check sensitivity run.
    PiecewisePolyKernel1D perturbed(int i, int j, double eps) const;

private:
    PiecewisePolyKernel1D(CoeffMatrix low, CoeffMatrix high, double den,
                          int order, std::vector<double> zeros)
        : low_(low), high_(high), den_(den), smoothness_order_(order),
          vanishes_at_(std::move(zeros)) {}

    CoeffMatrix low_{};
    CoeffMatrix high_{};
    double den_ = 1.0;
    int smoothness_order_ = 1;
    std::vector<double> vanishes_at_;
};

/// Product kernel K((nu,t),(z,u)) = spatial(nu,z) * temporal(t,u).
struct TensorKernel2D {
    PiecewisePolyKernel1D spatial;
    PiecewisePolyKernel1D temporal;

    double eval(double nu, double t, double z, double u,
                int dnu = 0, int dt = 0, int dz = 0, int du = 0) const;
};

/// Parameters of the order-r Sobolev inner product
///   <f,g> = sum_{i<r} f^(i)(a) g^(i)(a) + int_a^b f^(r) g^(r).
/// The integral uses composite Gauss-Legendre panels, doubled until two
/// successive refinements agree to 1e-12. Panels are aligned with any listed
/// breakpoints so piecewise integrands are handled exactly.
struct InnerProductSpec {
    int order = 3;
    int quadrature_panels = 32;
    int quadrature_nodes_per_panel = 8;
    Interval domain{0.0, 1.0};
    std::vector<double> breakpoints{};
};

double sobolev_inner_product(const DiffFn& f, const DiffFn& g,
                             const InnerProductSpec& spec);

/// Kernel section K(., z) as a differentiable function of the first argument.
DiffFn kernel_section(const PiecewisePolyKernel1D& kernel, double z);

/// Order-1 kernel of W^1_2[0,1]: 1 + min(nu, eta).
double w1_kernel(double nu, double eta);

/// Temporal kernel min(t, u) of the subspace {f : f(0) = 0}.
double w1h_kernel(double t, double u);

/// Derivatives of the order-3 kernel; ds, dz in 0..3.
double w3_kernel_deriv(double s, double z, int ds, int dz);

struct Point2 {
    double nu;
    double t;
};

struct DerivOrders4 {
    int dnu = 0;
    int dt = 0;
    int dz = 0;
    int du = 0;
};

/// Product of the two 1-D evaluations for the order-(3,1) tensor kernel.
double tensor_kernel_deriv(Point2 x, Point2 y, DerivOrders4 orders);

/// Gauss-Legendre nodes and weights on [-1,1].
std::vector<std::pair<double, double>> gauss_legendre(int n);

}  // namespace rkvp
