#pragma once

#include <vector>

#include "rkvp/fractional.hpp"
#include "rkvp/polynomial.hpp"

namespace rkvp {

/// Traveling-wave ansatz Phi(xi) = sum_i a_i tanh(xi)^i with xi = k*nu - c*t^alpha/alpha.
struct TanhAnsatz {
    TanhAnsatz(int m, std::vector<double> coeffs, double k, double c = 0.0)
        : m(m), coeffs(std::move(coeffs)), k(k), c(c) {
        if (m < 1) throw InputError("ansatz degree must be >= 1");
        if (static_cast<int>(this->coeffs.size()) != m + 1)
            throw InputError("ansatz needs m + 1 coefficients");
    }
    int m;
    std::vector<double> coeffs;  // a_0 .. a_m
    double k;
    double c;
};

/// Applies the xi-derivative in the Y = tanh(xi) variable: (1 - Y^2) dP/dY.
template <typename T>
Polynomial<T> xi_derivative(const Polynomial<T>& p) {
    Polynomial<T> one_minus_y2(std::vector<T>{T(1), T(0), T(-1)});
    return one_minus_y2 * p.derivative();
}

/// Residual of the traveling-wave form k^2 (Phi Phi''' - Phi' Phi'') + Phi^2 Phi',
/// collected as a polynomial in Y. Zero iff the ansatz solves the reduced ODE
/// for every wave speed.
template <typename T>
Polynomial<T> reduced_residual_poly(const std::vector<T>& coeffs, const T& k) {
    Polynomial<T> phi{std::vector<T>(coeffs)};
    Polynomial<T> d1 = xi_derivative(phi);
    Polynomial<T> d2 = xi_derivative(d1);
    Polynomial<T> d3 = xi_derivative(d2);
    return (phi * d3 - d1 * d2).scaled(k * k) + phi * phi * d1;
}

/// Once-integrated form k^2 (Phi Phi'' - (Phi')^2) + Phi^3/3 - A.
template <typename T>
Polynomial<T> integrated_residual_poly(const std::vector<T>& coeffs, const T& k,
                                       const T& A) {
    Polynomial<T> phi{std::vector<T>(coeffs)};
    Polynomial<T> d1 = xi_derivative(phi);
    Polynomial<T> d2 = xi_derivative(d1);
    Polynomial<T> cubic = (phi * phi * phi).scaled(T(1) / T(3));
    return (phi * d2 - d1 * d1).scaled(k * k) + cubic - Polynomial<T>::constant(A);
}

YPolynomial reduced_residual(const TanhAnsatz& ansatz);
YPolynomial integrated_residual(const TanhAnsatz& ansatz, double A);
RationalPoly reduced_residual(const std::vector<Rational>& coeffs, Rational k);
RationalPoly integrated_residual(const std::vector<Rational>& coeffs, Rational k,
                                 Rational A);

/// Ansatz degree from the homogeneous balance of the integrated form:
/// deg(Phi^3) = 3m against deg(Phi Phi'') = 2m + 2.
int hbp_balance();

/// Solves the Y-coefficient equations of the integrated form by damped
/// Gauss-Newton with the analytic Jacobian; the integration constant is an
/// extra unknown. Throws NoConvergenceError when the iteration stalls.
TanhAnsatz solve_coefficients(int m, double k_fixed, const std::vector<double>& guess);

/// Exact soliton 6 - 6 tanh^2(nu - c t^alpha / alpha).
double exact_solution(double nu, double t, FractionalOrder alpha, double c);
/// Spatial derivatives of the exact soliton, order 0..2.
double exact_solution_dnu(double nu, double t, FractionalOrder alpha, double c,
                          int order);
/// Conformable time derivative of the exact soliton: 12 c tanh(xi) sech^2(xi).
double exact_w(double nu, double t, FractionalOrder alpha, double c);
double exact_w_dnu(double nu, double t, FractionalOrder alpha, double c, int order);

/// The solved coefficient set; construction re-checks that both residual forms
/// vanish identically in exact arithmetic.
struct ExactSolutionParams {
    ExactSolutionParams(FractionalOrder alpha, double c);
    double a0 = 6.0;
    double a1 = 0.0;
    double a2 = -6.0;
    double k = 1.0;
    double c;
    FractionalOrder alpha;
};

}  // namespace rkvp
