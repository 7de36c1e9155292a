#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "rkvp/kernels.hpp"

using namespace rkvp;

namespace {

// Test-local composite midpoint rule; the independent quadrature oracle for
// the reproducing-property examples. Midpoint never samples the interval
// edges, so kernel branch points can sit on them safely.
double midpoint(const std::function<double(double)>& f, double a, double b,
                int panels) {
    const double h = (b - a) / panels;
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) acc += f(a + (i + 0.5) * h);
    return acc * h;
}

}  // namespace

TEST_CASE("w1 kernel values") {
    CHECK(w1_kernel(0.3, 0.7) == doctest::Approx(1.3));
    CHECK(w1_kernel(0.0, 0.0) == doctest::Approx(1.0));
    CHECK(w1_kernel(0.25, 0.75) == w1_kernel(0.75, 0.25));
    CHECK_THROWS_AS(w1_kernel(-0.1, 0.5), InputError);
    CHECK_THROWS_AS(w1_kernel(0.5, 1.5), InputError);
}

TEST_CASE("w1 kernel reproduces point evaluation") {
    // <f, R^1_z> = f(0) K(0,z) + int f' dK/ds, with f(s) = s and z = 0.4.
    const PiecewisePolyKernel1D k = PiecewisePolyKernel1D::sobolev1();
    const double z = 0.4;
    auto dk = [&](double s) { return k.eval(s, z, 1, 0); };
    const double oracle = 0.0 * k.eval(0.0, z) +
                          midpoint(dk, 0.0, z, 400) + midpoint(dk, z, 1.0, 400);
    CHECK(oracle == doctest::Approx(0.4).epsilon(1e-9));

    InnerProductSpec spec;
    spec.order = 1;
    spec.breakpoints = {z};
    const DiffFn f = [](double s, int o) { return o == 0 ? s : (o == 1 ? 1.0 : 0.0); };
    CHECK(sobolev_inner_product(f, kernel_section(k, z), spec) ==
          doctest::Approx(0.4).epsilon(1e-10));
}

TEST_CASE("homogenized temporal kernel") {
    CHECK(w1h_kernel(0.3, 0.7) == doctest::Approx(0.3));
    CHECK(w1h_kernel(0.0, 0.9) == 0.0);
    CHECK_THROWS_AS(w1h_kernel(-0.2, 0.5), InputError);

    // <f, min(.,u)> under int f'g' reproduces f(0.5) = 0.25 for f = t^2.
    const PiecewisePolyKernel1D k = PiecewisePolyKernel1D::brownian();
    const double u = 0.5;
    auto integrand = [&](double t) { return 2.0 * t * k.eval(t, u, 1, 0); };
    const double oracle = midpoint(integrand, 0.0, u, 400) + midpoint(integrand, u, 1.0, 400);
    CHECK(oracle == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("w3 kernel vanishes on the boundary") {
    for (double s : {0.0, 0.13, 0.5, 0.77, 1.0}) {
        CHECK(w3_kernel_deriv(s, 0.0, 0, 0) == 0.0);
        CHECK(w3_kernel_deriv(s, 1.0, 0, 0) == 0.0);
        CHECK(w3_kernel_deriv(0.0, s, 0, 0) == 0.0);
        CHECK(w3_kernel_deriv(1.0, s, 0, 0) == 0.0);
    }
}

TEST_CASE("w3 kernel symmetry and input validation") {
    CHECK(w3_kernel_deriv(0.25, 0.75, 0, 0) ==
          doctest::Approx(w3_kernel_deriv(0.75, 0.25, 0, 0)).epsilon(1e-14));
    CHECK_THROWS_AS(w3_kernel_deriv(0.5, 0.5, 4, 0), InputError);
    CHECK_THROWS_AS(w3_kernel_deriv(0.5, 0.5, 0, -1), InputError);
    CHECK_THROWS_AS(w3_kernel_deriv(1.2, 0.5, 0, 0), InputError);
}

TEST_CASE("w3 kernel reproduces on the boundary-vanishing subspace") {
    // f(s) = s(1-s) has vanishing third derivative, so the inner product
    // collapses to the boundary terms: f'(0) dK/ds + f''(0) d2K/ds2 at s = 0.
    const double z = 0.5;
    const double boundary_only =
        1.0 * w3_kernel_deriv(0.0, z, 1, 0) - 2.0 * w3_kernel_deriv(0.0, z, 2, 0);
    CHECK(boundary_only == doctest::Approx(0.25).epsilon(1e-12));

    InnerProductSpec spec;
    spec.order = 3;
    spec.breakpoints = {z};
    const DiffFn f = [](double s, int o) {
        switch (o) {
            case 0: return s * (1.0 - s);
            case 1: return 1.0 - 2.0 * s;
            case 2: return -2.0;
            default: return 0.0;
        }
    };
    const PiecewisePolyKernel1D k = PiecewisePolyKernel1D::sobolev3();
    CHECK(sobolev_inner_product(f, kernel_section(k, z), spec) ==
          doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("reproducing property over the z grid") {
    const PiecewisePolyKernel1D k3 = PiecewisePolyKernel1D::sobolev3();
    const double pi = std::acos(-1.0);
    // sin(pi s) vanishes at both endpoints; its derivatives cycle.
    const DiffFn f = [pi](double s, int o) {
        const double scale = std::pow(pi, o);
        switch (o % 4) {
            case 0: return scale * std::sin(pi * s);
            case 1: return scale * std::cos(pi * s);
            case 2: return -scale * std::sin(pi * s);
            default: return -scale * std::cos(pi * s);
        }
    };
    for (int zi = 1; zi <= 9; ++zi) {
        const double z = zi / 10.0;
        InnerProductSpec spec;
        spec.order = 3;
        spec.breakpoints = {z};
        const double ip = sobolev_inner_product(f, kernel_section(k3, z), spec);
        CHECK(std::abs(ip - std::sin(pi * z)) <= 1e-8);
    }
}

TEST_CASE("branch transcription: high branch is the transpose of low") {
    const PiecewisePolyKernel1D k = PiecewisePolyKernel1D::sobolev3();
    for (int i = 0; i < PiecewisePolyKernel1D::kMaxDegree; ++i)
        for (int j = 0; j < PiecewisePolyKernel1D::kMaxDegree; ++j)
            CHECK(k.branch_low()[i][j] == k.branch_high()[j][i]);
    CHECK(k.denominator() == 18720.0);
    CHECK(k.smoothness_order() == 3);
    REQUIRE(k.vanishes_at().size() == 2);
}

TEST_CASE("kernel symmetry on random pairs") {
    const PiecewisePolyKernel1D k = PiecewisePolyKernel1D::sobolev3();
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double s = unit(rng), z = unit(rng);
        worst = std::max(worst, std::abs(k.eval(s, z) - k.eval(z, s)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("kernel gram matrices are positive semidefinite") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& k : {PiecewisePolyKernel1D::sobolev3(),
                          PiecewisePolyKernel1D::sobolev1(),
                          PiecewisePolyKernel1D::brownian()}) {
        const int m = 12;
        std::vector<double> pts(m);
        for (auto& p : pts) p = unit(rng);
        Eigen::MatrixXd gram(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) gram(i, j) = k.eval(pts[i], pts[j]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    }
}

TEST_CASE("diagonal continuity to total order four") {
    const PiecewisePolyKernel1D k = PiecewisePolyKernel1D::sobolev3();
    for (int si = 1; si <= 9; ++si) {
        const double s = si / 10.0;
        for (int ds = 0; ds <= 4; ++ds)
            for (int dz = 0; ds + dz <= 4; ++dz) {
                const double low =
                    k.eval_on_branch(PiecewisePolyKernel1D::Branch::Low, s, s, ds, dz);
                const double high =
                    k.eval_on_branch(PiecewisePolyKernel1D::Branch::High, s, s, ds, dz);
                CHECK(std::abs(low - high) <= 1e-9);
            }
    }
}

TEST_CASE("tensor kernel factorizes") {
    const Point2 x{0.5, 0.5};
    const double expected =
        w3_kernel_deriv(0.5, 0.5, 0, 0) * w1h_kernel(0.5, 0.5);
    CHECK(tensor_kernel_deriv(x, x, {}) == doctest::Approx(expected));
    CHECK(tensor_kernel_deriv({0.3, 0.8}, {0.0, 0.6}, {}) == 0.0);  // z = 0
    CHECK_THROWS_AS(tensor_kernel_deriv(x, x, {0, 2, 0, 0}), InputError);
}

TEST_CASE("tensor kernel mixed derivative agrees across the diagonal") {
    // Total order 4 = 2r - 2 is the last continuous one.
    const PiecewisePolyKernel1D k = PiecewisePolyKernel1D::sobolev3();
    const double low =
        k.eval_on_branch(PiecewisePolyKernel1D::Branch::Low, 0.5, 0.5, 2, 2);
    const double high =
        k.eval_on_branch(PiecewisePolyKernel1D::Branch::High, 0.5, 0.5, 2, 2);
    CHECK(low == doctest::Approx(high).epsilon(1e-12));
    CHECK(tensor_kernel_deriv({0.5, 0.4}, {0.5, 0.7}, {2, 0, 2, 0}) ==
          doctest::Approx(low * 0.4));
}

TEST_CASE("sobolev inner product") {
    const DiffFn one = [](double, int o) { return o == 0 ? 1.0 : 0.0; };
    InnerProductSpec r1;
    r1.order = 1;
    CHECK(sobolev_inner_product(one, one, r1) == doctest::Approx(1.0));

    const DiffFn cubic = [](double s, int o) {
        switch (o) {
            case 0: return s * s * s;
            case 1: return 3.0 * s * s;
            case 2: return 6.0 * s;
            case 3: return 6.0;
            default: return 0.0;
        }
    };
    InnerProductSpec r3;
    r3.order = 3;
    CHECK(sobolev_inner_product(cubic, cubic, r3) == doctest::Approx(36.0));

    CHECK_THROWS_AS(sobolev_inner_product(one, one, InnerProductSpec{0, 8, 8}),
                    InputError);
}

TEST_CASE("sobolev norm positivity on random polynomials") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::array<double, 5> c{};
        for (auto& v : c) v = coeff(rng);
        const DiffFn f = [c](double s, int o) {
            double acc = 0.0;
            for (int i = o; i <= 4; ++i) {
                double fact = 1.0;
                for (int q = 0; q < o; ++q) fact *= i - q;
                acc += c[i] * fact * std::pow(s, i - o);
            }
            return acc;
        };
        InnerProductSpec spec;
        spec.order = 2;
        CHECK(sobolev_inner_product(f, f, spec) >= -1e-12);
    }
}

TEST_CASE("affine map") {
    const AffineMap identity = affine_map(Interval(0.0, 1.0));
    CHECK(identity.to_unit(0.3) == doctest::Approx(0.3));
    CHECK(identity.jacobian() == doctest::Approx(1.0));

    const AffineMap half = affine_map(Interval(0.0, 2.0));
    CHECK(half.to_unit(1.0) == doctest::Approx(0.5));
    CHECK(half.from_unit(0.5) == doctest::Approx(1.0));
    CHECK(half.chain_factor(1) == doctest::Approx(0.5));
    CHECK(half.chain_factor(3) == doctest::Approx(0.125));

    CHECK_THROWS_AS(Interval(1.0, 1.0), InputError);
    CHECK_THROWS_AS(affine_map(Interval(2.0, 1.0)), InputError);
}

TEST_CASE("perturbation hook breaks the reproducing property only") {
    const PiecewisePolyKernel1D k =
        PiecewisePolyKernel1D::sobolev3().perturbed(1, 1, 1e-3);
    // Symmetry survives a symmetric perturbation.
    CHECK(std::abs(k.eval(0.2, 0.9) - k.eval(0.9, 0.2)) <= 1e-12);
    // The reproducing identity does not.
    const double z = 0.5;
    const double boundary_only =
        1.0 * k.eval(0.0, z, 1, 0) - 2.0 * k.eval(0.0, z, 2, 0);
    CHECK(std::abs(boundary_only - 0.25) > 1e-8);
}
