#include <doctest.h>

#include <cmath>
#include <vector>

#include "rkvp/fractional.hpp"
#include "rkvp/tanh_method.hpp"

using namespace rkvp;

namespace {

// Test-local polynomial arithmetic: plain coefficient vectors and schoolbook
// convolution, independent of the library's Polynomial type.
using Vec = std::vector<double>;

Vec mul(const Vec& a, const Vec& b) {
    Vec c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

Vec add(Vec a, const Vec& b, double scale = 1.0) {
    if (b.size() > a.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
    return a;
}

// (1 - Y^2) d/dY
Vec xi_d(const Vec& p) {
    Vec d(p.size() > 1 ? p.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = i * p[i];
    return add(d, mul({0.0, 0.0, 1.0}, d), -1.0);
}

bool matches(const Vec& got, const Vec& expect, double tol = 1e-12) {
    for (std::size_t i = 0; i < std::max(got.size(), expect.size()); ++i) {
        const double g = i < got.size() ? got[i] : 0.0;
        const double e = i < expect.size() ? expect[i] : 0.0;
        if (std::abs(g - e) > tol) return false;
    }
    return true;
}

bool poly_matches(const YPolynomial& got, const Vec& expect, double tol = 1e-12) {
    Vec g(got.coeffs().begin(), got.coeffs().end());
    return matches(g, expect, tol);
}

}  // namespace

TEST_CASE("independent expansion oracle for the solved ansatz") {
    // Phi = 6 - 6 Y^2, k = 1: every product frozen from the hand expansion.
    const Vec phi{6.0, 0.0, -6.0};
    const Vec d1 = xi_d(phi), d2 = xi_d(d1), d3 = xi_d(d2);

    CHECK(matches(mul(phi, d3), {0, 576, 0, -2016, 0, 2304, 0, -864}));
    CHECK(matches(mul(d1, d2), {0, 144, 0, -720, 0, 1008, 0, -432}));
    CHECK(matches(mul(mul(phi, phi), d1), {0, -432, 0, 1296, 0, -1296, 0, 432}));
    CHECK(matches(mul(phi, d2), {-72, 0, 360, 0, -504, 0, 216}));
    CHECK(matches(mul(d1, d1), {0, 0, 144, 0, -288, 0, 144}));

    // The sum k^2(Phi Phi''' - Phi' Phi'') + Phi^2 Phi' cancels to zero.
    Vec reduced = add(add(mul(phi, d3), mul(d1, d2), -1.0),
                      mul(mul(phi, phi), d1));
    CHECK(matches(reduced, {}));

    // Library result agrees with the oracle on a nonzero case (k = 2).
    const TanhAnsatz off{2, {6.0, 0.0, -6.0}, 2.0};
    const Vec dispersive = add(mul(phi, d3), mul(d1, d2), -1.0);
    const Vec oracle_off = add(mul(mul(phi, phi), d1), dispersive, 4.0);
    CHECK(poly_matches(reduced_residual(off), oracle_off));
}

TEST_CASE("reduced residual vanishes for the solved coefficients") {
    const std::vector<Rational> coeffs{Rational(6), Rational(0), Rational(-6)};
    CHECK(reduced_residual(coeffs, Rational(1)).is_zero());
    CHECK(integrated_residual(coeffs, Rational(1), Rational(0)).is_zero());

    // Constant ansatz: all xi-derivatives vanish.
    const std::vector<Rational> constant{Rational(4)};
    CHECK(reduced_residual(constant, Rational(1)).is_zero());

    // Wrong wave number leaves a nonzero polynomial.
    CHECK_FALSE(reduced_residual(coeffs, Rational(2)).is_zero());
    CHECK_FALSE(integrated_residual(coeffs, Rational(2), Rational(0)).is_zero());
}

TEST_CASE("scaled family 6k^2 (1 - Y^2) solves for any k") {
    const std::vector<Rational> scaled{Rational(24), Rational(0), Rational(-24)};
    CHECK(reduced_residual(scaled, Rational(2)).is_zero());
    CHECK(integrated_residual(scaled, Rational(2), Rational(0)).is_zero());
}

TEST_CASE("zero ansatz gives identically zero residuals") {
    const TanhAnsatz zero{2, {0.0, 0.0, 0.0}, 1.0};
    CHECK(reduced_residual(zero).is_zero());
    CHECK(integrated_residual(zero, 0.0).is_zero());
}

TEST_CASE("xi derivative of the integrated form is the reduced form") {
    const std::vector<Rational> coeffs{Rational(1), Rational(2), Rational(3)};
    const Rational k(3, 2);
    const RationalPoly integrated = integrated_residual(coeffs, k, Rational(0));
    CHECK(xi_derivative(integrated) == reduced_residual(coeffs, k));
}

TEST_CASE("homogeneous balance") {
    CHECK(hbp_balance() == 2);

    // Degree bookkeeping behind the balance: one xi-derivative raises the
    // degree by one, so Phi Phi'' has degree 2m + 2.
    for (int m = 1; m <= 4; ++m) {
        YPolynomial phi = YPolynomial::monomial(m, 1.0);
        CHECK(xi_derivative(phi).degree() == m + 1);
        CHECK((phi * xi_derivative(xi_derivative(phi))).degree() == 2 * m + 2);
    }
}

TEST_CASE("coefficient solve recovers the soliton") {
    const TanhAnsatz sol = solve_coefficients(2, 1.0, {5.0, 0.1, -5.0});
    CHECK(sol.coeffs[0] == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(sol.coeffs[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(sol.coeffs[2] == doctest::Approx(-6.0).epsilon(1e-9));

    const TanhAnsatz wide = solve_coefficients(2, 2.0, {23.0, 0.5, -25.0});
    CHECK(wide.coeffs[0] == doctest::Approx(24.0).epsilon(1e-9));
    CHECK(wide.coeffs[2] == doctest::Approx(-24.0).epsilon(1e-9));

    const TanhAnsatz trivial = solve_coefficients(2, 1.0, {0.0, 0.0, 0.0});
    for (double a : trivial.coeffs) CHECK(std::abs(a) <= 1e-12);

    CHECK_THROWS_AS(solve_coefficients(2, 1.0,
                                       {1.0, std::nan(""), 0.0}),
                    InputError);
}

TEST_CASE("solver output is self-consistent") {
    for (auto guess : {std::vector<double>{5.0, 0.1, -5.0},
                       std::vector<double>{7.0, -0.3, -7.0},
                       std::vector<double>{20.0, 1.0, -30.0}}) {
        const TanhAnsatz sol = solve_coefficients(2, 1.0, guess);
        const YPolynomial r = integrated_residual(sol, 0.0);
        for (double c : r.coeffs()) CHECK(std::abs(c) <= 1e-10);
    }
}

TEST_CASE("exact solution values") {
    CHECK(std::abs(exact_solution(1.0 / 6.0, 0.5, FractionalOrder(0.25), 0.001) -
                   5.84279) <= 5e-5);
    CHECK(exact_solution(0.0, 0.0, FractionalOrder(0.5), 0.001) == 6.0);
    CHECK(std::abs(exact_solution(0.5, 0.5, FractionalOrder(0.5), 0.001) -
                   4.72485) <= 5e-5);
    CHECK_THROWS_AS(exact_solution(0.5, -0.1, FractionalOrder(0.5), 0.001),
                    InputError);
}

TEST_CASE("exact solution range and classical limit") {
    for (double nu : {-2.0, -0.3, 0.0, 0.4, 1.0, 3.0})
        for (double t : {0.0, 0.3, 1.0}) {
            const double v = exact_solution(nu, t, FractionalOrder(0.5), 0.02);
            CHECK(v > 0.0);
            CHECK(v <= 6.0);
        }
    // Equality with 6 only at xi = 0.
    const double c = 0.02, t = 1.0, alpha = 1.0;
    const double crest = c * t;  // xi = nu - c t at alpha = 1
    CHECK(exact_solution(crest, t, FractionalOrder(alpha), c) == doctest::Approx(6.0));
    CHECK(exact_solution(crest, t, FractionalOrder(alpha), c) ==
          doctest::Approx(6.0 - 6.0 * std::pow(std::tanh(crest - c * t), 2)));
    CHECK(exact_solution(crest + 0.1, t, FractionalOrder(alpha), c) < 6.0);
}

TEST_CASE("exact w matches the conformable derivative") {
    CHECK(exact_w(0.4, 0.8, FractionalOrder(0.5), 0.0) == 0.0);
    CHECK(exact_w(0.0, 0.0, FractionalOrder(0.5), 0.001) == 0.0);  // tanh(0)

    // Numeric-differentiation oracle: fourth-order central difference in t.
    const FractionalOrder alpha(0.5);
    const double nu = 0.5, t = 0.5, c = 0.001, h = 1e-4;
    const DiffFn phi_of_t = [&](double tt, int order) {
        if (order == 0) return exact_solution(nu, tt, alpha, c);
        const double m2 = exact_solution(nu, tt - 2 * h, alpha, c);
        const double m1 = exact_solution(nu, tt - h, alpha, c);
        const double p1 = exact_solution(nu, tt + h, alpha, c);
        const double p2 = exact_solution(nu, tt + 2 * h, alpha, c);
        return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    };
    const double via_deriv = conformable_deriv(phi_of_t, t, alpha);
    CHECK(std::abs(via_deriv - exact_w(nu, t, alpha, 0.001)) <= 1e-8);
}

TEST_CASE("exact solution spatial derivatives match finite differences") {
    const FractionalOrder alpha(0.75);
    const double t = 0.4, c = 0.001, h = 1e-5;
    for (double nu : {0.2, 0.5, 0.8}) {
        const double fd1 = (exact_solution(nu + h, t, alpha, c) -
                            exact_solution(nu - h, t, alpha, c)) /
                           (2 * h);
        CHECK(exact_solution_dnu(nu, t, alpha, c, 1) ==
              doctest::Approx(fd1).epsilon(1e-8));
        const double fd2 = (exact_solution_dnu(nu + h, t, alpha, c, 1) -
                            exact_solution_dnu(nu - h, t, alpha, c, 1)) /
                           (2 * h);
        CHECK(exact_solution_dnu(nu, t, alpha, c, 2) ==
              doctest::Approx(fd2).epsilon(1e-7));
        const double fdw1 = (exact_w(nu + h, t, alpha, c) -
                             exact_w(nu - h, t, alpha, c)) /
                            (2 * h);
        CHECK(exact_w_dnu(nu, t, alpha, c, 1) ==
              doctest::Approx(fdw1).epsilon(1e-7));
        const double fdw2 = (exact_w_dnu(nu + h, t, alpha, c, 1) -
                             exact_w_dnu(nu - h, t, alpha, c, 1)) /
                            (2 * h);
        CHECK(exact_w_dnu(nu, t, alpha, c, 2) ==
              doctest::Approx(fdw2).epsilon(1e-6));
    }
}

TEST_CASE("exact solution params validate at construction") {
    CHECK_NOTHROW(ExactSolutionParams(FractionalOrder(0.5), 0.001));
    const ExactSolutionParams params(FractionalOrder(0.25), 0.001);
    CHECK(params.a0 == 6.0);
    CHECK(params.a2 == -6.0);
    CHECK(params.k == 1.0);
}
