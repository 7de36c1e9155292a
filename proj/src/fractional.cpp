#include "rkvp/fractional.hpp"

#include <cmath>

namespace rkvp {

SampledSignal caputo_l1(const SampledSignal& f, FractionalOrder alpha) {
    const int n = f.grid.steps;
    const double h = f.grid.spacing();
    std::vector<double> out(n + 1, 0.0);

    if (alpha.value == 1.0) {
        for (int j = 1; j <= n; ++j) out[j] = (f.values[j] - f.values[j - 1]) / h;
        out[0] = (f.values[1] - f.values[0]) / h;
        return SampledSignal(f.grid, std::move(out));
    }

    const double a = alpha.value;
    std::vector<double> b(n);
    for (int k = 0; k < n; ++k)
        b[k] = std::pow(k + 1.0, 1.0 - a) - std::pow(static_cast<double>(k), 1.0 - a);

    const double pref = std::pow(h, -a) / std::tgamma(2.0 - a);
    for (int j = 1; j <= n; ++j) {
        double acc = 0.0;
        for (int k = 0; k < j; ++k)
            acc += b[k] * (f.values[j - k] - f.values[j - k - 1]);
        out[j] = pref * acc;
    }
    return SampledSignal(f.grid, std::move(out));
}

SampledSignal rl_integral(const SampledSignal& f, FractionalOrder alpha) {
    const int n = f.grid.steps;
    const double a = alpha.value;
    const double inv_gamma = 1.0 / std::tgamma(a);
    std::vector<double> out(n + 1, 0.0);

    for (int j = 1; j <= n; ++j) {
        const double tj = f.grid.node(j);
        double acc = 0.0;
        for (int k = 0; k < j; ++k) {
            const double t0 = f.grid.node(k), t1 = f.grid.node(k + 1);
            const double hi = tj - t0, lo = tj - t1;  // kernel argument range
            const double slope = (f.values[k + 1] - f.values[k]) / (t1 - t0);
            // With tau = tj - s the panel is int_lo^hi (f_k + slope*(hi - tau)) tau^(a-1).
            const double i0 = (std::pow(hi, a) - std::pow(lo, a)) / a;
            const double i1 =
                hi * i0 - (std::pow(hi, a + 1.0) - std::pow(lo, a + 1.0)) / (a + 1.0);
            acc += f.values[k] * i0 + slope * i1;
        }
        out[j] = inv_gamma * acc;
    }
    return SampledSignal(f.grid, std::move(out));
}

double conformable_deriv(const DiffFn& f, double t, FractionalOrder alpha) {
    if (t < 0.0) throw InputError("conformable derivative requires t >= 0");
    if (t == 0.0) {
        if (alpha.value == 1.0) return f(0.0, 1);
        throw EvaluationError("conformable derivative undefined at t = 0 for alpha < 1");
    }
    return std::pow(t, 1.0 - alpha.value) * f(t, 1);
}

SampledSignal conformable_integral(const SampledSignal& w, FractionalOrder alpha,
                                   double initial) {
    const int n = w.grid.steps;
    const double a = alpha.value;
    std::vector<double> out(n + 1, 0.0);
    out[0] = initial;

    double acc = initial;
    for (int k = 0; k < n; ++k) {
        const double t0 = w.grid.node(k), t1 = w.grid.node(k + 1);
        const double slope = (w.values[k + 1] - w.values[k]) / (t1 - t0);
        // int_t0^t1 s^(a-1) (w_k + slope*(s - t0)) ds, with t0^a -> 0 at k = 0.
        const double i0 = (std::pow(t1, a) - std::pow(t0, a)) / a;
        const double i1 = (std::pow(t1, a + 1.0) - std::pow(t0, a + 1.0)) / (a + 1.0);
        acc += (w.values[k] - slope * t0) * i0 + slope * i1;
        out[k + 1] = acc;
    }
    return SampledSignal(w.grid, std::move(out));
}

}  // namespace rkvp
