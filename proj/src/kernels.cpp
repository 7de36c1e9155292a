#include "rkvp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rkvp {

namespace {

// Coefficient matrix of the order-3 kernel's low branch (s <= z): entry [i][j]
// multiplies s^i z^j, all over the common denominator 18720. The high branch
// is the variable swap, i.e. the transpose.
constexpr std::array<std::array<long long, 6>, 6> kSobolev3Low = {{
    {0, 0, 0, 0, 0, 0},
    {0, 4320, -3600, -1200, 600, -120},
    {0, -3600, 3780, -300, 150, -30},
    {0, -1200, 1260, -100, 50, -10},
    {0, -180, 150, 50, -25, 5},
    {156, -120, -30, -10, 5, -1},
}};

PiecewisePolyKernel1D::CoeffMatrix to_double(
    const std::array<std::array<long long, 6>, 6>& m, bool transpose) {
    PiecewisePolyKernel1D::CoeffMatrix out{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            out[i][j] = static_cast<double>(transpose ? m[j][i] : m[i][j]);
    return out;
}

void check_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw InputError(std::string(name) + " outside [0,1] in kernel evaluation");
}

double falling_factorial(int n, int k) {
    double f = 1.0;
    for (int q = 0; q < k; ++q) f *= static_cast<double>(n - q);
    return f;
}

// Summation nesting matters on the boundary: each low-branch s-row sums to
// zero at z = 1 (and each high-branch z-column at s = 1) in exact integer
// arithmetic, so grouping those sums innermost keeps K exactly zero on all
// four edges in floating point.
double eval_matrix_rows(const PiecewisePolyKernel1D::CoeffMatrix& m, double den,
                        double s, double z, int ds, int dz) {
    double total = 0.0;
    for (int i = PiecewisePolyKernel1D::kMaxDegree - 1; i >= ds; --i) {
        double row = 0.0;
        for (int j = PiecewisePolyKernel1D::kMaxDegree - 1; j >= dz; --j) {
            const double c = m[i][j];
            if (c == 0.0) continue;
            row += c * falling_factorial(j, dz) * std::pow(z, j - dz);
        }
        if (row == 0.0) continue;
        total += row * falling_factorial(i, ds) * std::pow(s, i - ds);
    }
    return total / den;
}

double eval_matrix_cols(const PiecewisePolyKernel1D::CoeffMatrix& m, double den,
                        double s, double z, int ds, int dz) {
    double total = 0.0;
    for (int j = PiecewisePolyKernel1D::kMaxDegree - 1; j >= dz; --j) {
        double col = 0.0;
        for (int i = PiecewisePolyKernel1D::kMaxDegree - 1; i >= ds; --i) {
            const double c = m[i][j];
            if (c == 0.0) continue;
            col += c * falling_factorial(i, ds) * std::pow(s, i - ds);
        }
        if (col == 0.0) continue;
        total += col * falling_factorial(j, dz) * std::pow(z, j - dz);
    }
    return total / den;
}

}  // namespace

double AffineMap::chain_factor(int order) const {
    double f = 1.0;
    for (int q = 0; q < order; ++q) f *= jacobian();
    return f;
}

AffineMap affine_map(const Interval& domain) {
    return AffineMap{domain.lo, domain.hi};
}

PiecewisePolyKernel1D PiecewisePolyKernel1D::sobolev3() {
    return PiecewisePolyKernel1D(to_double(kSobolev3Low, false),
                                 to_double(kSobolev3Low, true), 18720.0, 3,
                                 {0.0, 1.0});
}

PiecewisePolyKernel1D PiecewisePolyKernel1D::sobolev1() {
    CoeffMatrix low{};
    CoeffMatrix high{};
    low[0][0] = 1.0;   // 1 + s for s <= z
    low[1][0] = 1.0;
    high[0][0] = 1.0;  // 1 + z for s > z
    high[0][1] = 1.0;
    return PiecewisePolyKernel1D(low, high, 1.0, 1, {});
}

PiecewisePolyKernel1D PiecewisePolyKernel1D::brownian() {
    CoeffMatrix low{};
    CoeffMatrix high{};
    low[1][0] = 1.0;   // s for s <= z
    high[0][1] = 1.0;  // z for s > z
    return PiecewisePolyKernel1D(low, high, 1.0, 1, {0.0});
}

double PiecewisePolyKernel1D::eval(double s, double z, int ds, int dz) const {
    check_unit(s, "s");
    check_unit(z, "z");
    if (ds < 0 || dz < 0 || ds >= kMaxDegree || dz >= kMaxDegree)
        throw InputError("kernel derivative order out of range");
    return s <= z ? eval_matrix_rows(low_, den_, s, z, ds, dz)
                  : eval_matrix_cols(high_, den_, s, z, ds, dz);
}

double PiecewisePolyKernel1D::eval_on_branch(Branch which, double s, double z,
                                             int ds, int dz) const {
    check_unit(s, "s");
    check_unit(z, "z");
    if (ds < 0 || dz < 0 || ds >= kMaxDegree || dz >= kMaxDegree)
        throw InputError("kernel derivative order out of range");
    return which == Branch::Low ? eval_matrix_rows(low_, den_, s, z, ds, dz)
                                : eval_matrix_cols(high_, den_, s, z, ds, dz);
}

PiecewisePolyKernel1D PiecewisePolyKernel1D::perturbed(int i, int j,
                                                       double eps) const {
    if (i < 0 || j < 0 || i >= kMaxDegree || j >= kMaxDegree)
        throw InputError("perturbation index out of range");
    PiecewisePolyKernel1D copy = *this;
    copy.low_[i][j] += eps * den_;
    copy.high_[j][i] += eps * den_;
    return copy;
}

double TensorKernel2D::eval(double nu, double t, double z, double u,
                            int dnu, int dt, int dz, int du) const {
    return spatial.eval(nu, z, dnu, dz) * temporal.eval(t, u, dt, du);
}

std::vector<std::pair<double, double>> gauss_legendre(int n) {
    if (n < 1 || n > 64) throw InputError("Gauss-Legendre order out of range");
    std::vector<std::pair<double, double>> nw(n);
    for (int i = 0; i < n; ++i) {
        // Newton iteration from the Chebyshev-based initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nw[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    std::sort(nw.begin(), nw.end());
    return nw;
}

namespace {

double integrate_once(const DiffFn& f, const DiffFn& g, int r,
                      const std::vector<double>& edges, int panels_per_segment,
                      const std::vector<std::pair<double, double>>& nw) {
    double total = 0.0;
    for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
        const double a = edges[seg], b = edges[seg + 1];
        const double h = (b - a) / panels_per_segment;
        for (int p = 0; p < panels_per_segment; ++p) {
            const double lo = a + p * h;
            const double mid = lo + 0.5 * h;
            double acc = 0.0;
            for (const auto& [node, weight] : nw) {
                const double x = mid + 0.5 * h * node;
                acc += weight * f(x, r) * g(x, r);
            }
            total += acc * 0.5 * h;
        }
    }
    return total;
}

}  // namespace

double sobolev_inner_product(const DiffFn& f, const DiffFn& g,
                             const InnerProductSpec& spec) {
    if (spec.order < 1) throw InputError("inner product order must be >= 1");
    if (spec.quadrature_panels < 1) throw InputError("panels must be >= 1");
    const double a = spec.domain.lo, b = spec.domain.hi;

    double boundary = 0.0;
    for (int i = 0; i < spec.order; ++i) boundary += f(a, i) * g(a, i);

    std::vector<double> edges{a};
    for (double bp : spec.breakpoints)
        if (bp > a && bp < b) edges.push_back(bp);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const auto nw = gauss_legendre(spec.quadrature_nodes_per_panel);
    int panels = spec.quadrature_panels;
    double prev = integrate_once(f, g, spec.order, edges, panels, nw);
    for (int refine = 0; refine < 8; ++refine) {
        panels *= 2;
        const double next = integrate_once(f, g, spec.order, edges, panels, nw);
        if (std::abs(next - prev) < 1e-12) {
            prev = next;
            break;
        }
        prev = next;
    }
    return boundary + prev;
}

DiffFn kernel_section(const PiecewisePolyKernel1D& kernel, double z) {
    return [&kernel, z](double s, int order) { return kernel.eval(s, z, order, 0); };
}

double w1_kernel(double nu, double eta) {
    check_unit(nu, "nu");
    check_unit(eta, "eta");
    return 1.0 + std::min(nu, eta);
}

double w1h_kernel(double t, double u) {
    check_unit(t, "t");
    check_unit(u, "u");
    return std::min(t, u);
}

double w3_kernel_deriv(double s, double z, int ds, int dz) {
    if (ds < 0 || ds > 3 || dz < 0 || dz > 3)
        throw InputError("w3 kernel derivative orders must be in 0..3");
    static const PiecewisePolyKernel1D k = PiecewisePolyKernel1D::sobolev3();
    return k.eval(s, z, ds, dz);
}

double tensor_kernel_deriv(Point2 x, Point2 y, DerivOrders4 orders) {
    if (orders.dnu < 0 || orders.dnu > 3 || orders.dz < 0 || orders.dz > 3)
        throw InputError("spatial derivative orders must be in 0..3");
    if (orders.dt < 0 || orders.dt > 1 || orders.du < 0 || orders.du > 1)
        throw InputError("temporal derivative orders must be in 0..1");
    static const PiecewisePolyKernel1D spatial = PiecewisePolyKernel1D::sobolev3();
    static const PiecewisePolyKernel1D temporal = PiecewisePolyKernel1D::brownian();
    return spatial.eval(x.nu, y.nu, orders.dnu, orders.dz) *
           temporal.eval(x.t, y.t, orders.dt, orders.du);
}

}  // namespace rkvp
