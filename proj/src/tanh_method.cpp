#include "rkvp/tanh_method.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace rkvp {

YPolynomial reduced_residual(const TanhAnsatz& ansatz) {
    return reduced_residual_poly<double>(ansatz.coeffs, ansatz.k);
}

YPolynomial integrated_residual(const TanhAnsatz& ansatz, double A) {
    return integrated_residual_poly<double>(ansatz.coeffs, ansatz.k, A);
}

RationalPoly reduced_residual(const std::vector<Rational>& coeffs, Rational k) {
    return reduced_residual_poly<Rational>(coeffs, k);
}

RationalPoly integrated_residual(const std::vector<Rational>& coeffs, Rational k,
                                 Rational A) {
    return integrated_residual_poly<Rational>(coeffs, k, A);
}

int hbp_balance() {
    // In the integrated form the cubic term has degree 3m while Phi Phi'' and
    // (Phi')^2 both have degree 2m + 2 under d/dxi = (1 - Y^2) d/dY. The
    // smallest positive integer balancing 3m = 2m + 2:
    int m = 1;
    while (3 * m != 2 * m + 2) ++m;
    return m;
}

namespace {

// Residual coefficients of the integrated form for unknowns (a_0..a_m, A),
// padded to fixed length 3m + 1.
Eigen::VectorXd residual_vector(const std::vector<double>& a, double k, double A,
                                int m) {
    YPolynomial r = integrated_residual_poly<double>(a, k, A);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(3 * m + 1);
    for (int i = 0; i <= r.degree() && i < v.size(); ++i) v[i] = r.coeff(i);
    return v;
}

Eigen::MatrixXd residual_jacobian(const std::vector<double>& a, double k, int m) {
    YPolynomial phi{std::vector<double>(a)};
    YPolynomial d1 = xi_derivative(phi);
    YPolynomial d2 = xi_derivative(d1);
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(3 * m + 1, m + 2);
    for (int i = 0; i <= m; ++i) {
        YPolynomial e = YPolynomial::monomial(i, 1.0);
        YPolynomial e1 = xi_derivative(e);
        YPolynomial e2 = xi_derivative(e1);
        YPolynomial col = (e * d2 + phi * e2 - (d1 * e1).scaled(2.0)).scaled(k * k) +
                          phi * phi * e;
        for (int r = 0; r <= col.degree() && r < J.rows(); ++r) J(r, i) = col.coeff(r);
    }
    J(0, m + 1) = -1.0;  // d/dA
    return J;
}

}  // namespace

TanhAnsatz solve_coefficients(int m, double k_fixed, const std::vector<double>& guess) {
    if (m < 1) throw InputError("ansatz degree must be >= 1");
    if (static_cast<int>(guess.size()) != m + 1)
        throw InputError("guess needs m + 1 coefficients");
    for (double g : guess)
        if (!std::isfinite(g)) throw InputError("guess coefficients must be finite");

    std::vector<double> a = guess;
    double A = 0.0;
    constexpr int kMaxIters = 80;
    // Residual coefficients are cubic in the a_i, so the attainable floor
    // scales with |a|^3.
    auto tolerance = [m, &a] {
        double amax = 1.0;
        for (int i = 0; i <= m; ++i) amax = std::max(amax, std::abs(a[i]));
        return std::max(1e-12, 1e-14 * amax * amax * amax);
    };

    double rnorm = residual_vector(a, k_fixed, A, m).lpNorm<Eigen::Infinity>();
    for (int iter = 0; iter < kMaxIters; ++iter) {
        if (rnorm < tolerance()) return TanhAnsatz(m, a, k_fixed);

        Eigen::VectorXd r = residual_vector(a, k_fixed, A, m);
        Eigen::MatrixXd J = residual_jacobian(a, k_fixed, m);
        Eigen::VectorXd step = J.colPivHouseholderQr().solve(-r);

        // Backtracking keeps the Gauss-Newton step from overshooting far from
        // the solution manifold.
        double lambda = 1.0;
        for (int bt = 0; bt < 40; ++bt) {
            std::vector<double> trial = a;
            for (int i = 0; i <= m; ++i) trial[i] += lambda * step[i];
            double trialA = A + lambda * step[m + 1];
            double trial_norm =
                residual_vector(trial, k_fixed, trialA, m).lpNorm<Eigen::Infinity>();
            if (trial_norm < rnorm || trial_norm < tolerance()) {
                a = trial;
                A = trialA;
                rnorm = trial_norm;
                break;
            }
            lambda *= 0.5;
            if (bt == 39) {
                std::ostringstream msg;
                msg << "coefficient solve stalled at residual " << rnorm
                    << " with iterate (";
                for (int i = 0; i <= m; ++i) msg << (i ? ", " : "") << a[i];
                msg << "), A = " << A;
                throw NoConvergenceError(msg.str());
            }
        }
    }
    if (rnorm < tolerance()) return TanhAnsatz(m, a, k_fixed);

    std::ostringstream msg;
    msg << "coefficient solve did not converge: residual " << rnorm
        << " after " << kMaxIters << " iterations, last iterate (";
    for (int i = 0; i <= m; ++i) msg << (i ? ", " : "") << a[i];
    msg << "), A = " << A;
    throw NoConvergenceError(msg.str());
}

namespace {

double wave_phase(double nu, double t, double alpha, double c) {
    return nu - c * std::pow(t, alpha) / alpha;
}

}  // namespace

double exact_solution(double nu, double t, FractionalOrder alpha, double c) {
    if (t < 0.0) throw InputError("exact solution requires t >= 0");
    const double th = std::tanh(wave_phase(nu, t, alpha.value, c));
    return 6.0 - 6.0 * th * th;
}

double exact_solution_dnu(double nu, double t, FractionalOrder alpha, double c,
                          int order) {
    if (t < 0.0) throw InputError("exact solution requires t >= 0");
    const double xi = wave_phase(nu, t, alpha.value, c);
    const double th = std::tanh(xi);
    const double sech2 = 1.0 / (std::cosh(xi) * std::cosh(xi));
    switch (order) {
        case 0: return 6.0 - 6.0 * th * th;
        case 1: return -12.0 * th * sech2;
        case 2: return -12.0 * sech2 * sech2 + 24.0 * th * th * sech2;
        default: throw InputError("exact solution derivatives available to order 2");
    }
}

double exact_w(double nu, double t, FractionalOrder alpha, double c) {
    if (t < 0.0) throw InputError("exact w requires t >= 0");
    const double xi = wave_phase(nu, t, alpha.value, c);
    const double th = std::tanh(xi);
    const double sech2 = 1.0 / (std::cosh(xi) * std::cosh(xi));
    return 12.0 * c * th * sech2;
}

double exact_w_dnu(double nu, double t, FractionalOrder alpha, double c, int order) {
    if (t < 0.0) throw InputError("exact w requires t >= 0");
    const double xi = wave_phase(nu, t, alpha.value, c);
    const double th = std::tanh(xi);
    const double sech2 = 1.0 / (std::cosh(xi) * std::cosh(xi));
    switch (order) {
        case 0: return 12.0 * c * th * sech2;
        case 1: return 12.0 * c * (sech2 * sech2 - 2.0 * th * th * sech2);
        case 2: return 12.0 * c * (-8.0 * th * sech2 * sech2 + 4.0 * th * th * th * sech2);
        default: throw InputError("exact w derivatives available to order 2");
    }
}

ExactSolutionParams::ExactSolutionParams(FractionalOrder alpha, double c)
    : c(c), alpha(alpha) {
    const std::vector<Rational> coeffs{Rational(6), Rational(0), Rational(-6)};
    if (!reduced_residual(coeffs, Rational(1)).is_zero() ||
        !integrated_residual(coeffs, Rational(1), Rational(0)).is_zero())
        throw EvaluationError("exact-solution coefficients fail the residual check");
}

}  // namespace rkvp
