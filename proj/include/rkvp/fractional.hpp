#pragma once

#include <vector>

#include "rkvp/errors.hpp"
#include "rkvp/kernels.hpp"

namespace rkvp {

/// Fractional order alpha in (0, 1].
struct FractionalOrder {
    explicit FractionalOrder(double alpha) : value(alpha) {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw InputError("fractional order must lie in (0,1]");
    }
    double value;
};

/// Uniform grid t_j = j*horizon/steps, j = 0..steps.
struct TimeGrid {
    TimeGrid(double horizon, int steps) : horizon(horizon), steps(steps) {
        if (!(horizon > 0.0)) throw InputError("time horizon must be positive");
        if (steps < 1) throw InputError("time grid needs at least one step");
    }
    double horizon;
    int steps;

    double spacing() const { return horizon / steps; }
    double node(int j) const { return j * horizon / steps; }
    int size() const { return steps + 1; }
};

struct SampledSignal {
    SampledSignal(TimeGrid grid, std::vector<double> values)
        : grid(grid), values(std::move(values)) {
        if (static_cast<int>(this->values.size()) != grid.size())
            throw InputError("sample count must equal grid size");
    }
    TimeGrid grid;
    std::vector<double> values;
};

/// Caputo derivative via the L1 product rule. Exact for constants; for
/// alpha = 1 falls back to first differences.
SampledSignal caputo_l1(const SampledSignal& f, FractionalOrder alpha);

/// Riemann-Liouville integral I^alpha, integrating the power-law kernel
/// exactly against the piecewise-linear interpolant of f.
SampledSignal rl_integral(const SampledSignal& f, FractionalOrder alpha);

/// Conformable derivative t^(1-alpha) f'(t).
double conformable_deriv(const DiffFn& f, double t, FractionalOrder alpha);

/// Cumulative integral of s^(alpha-1) w(s), the inverse of the conformable
/// derivative; the weight singularity at s = 0 is integrated analytically.
SampledSignal conformable_integral(const SampledSignal& w, FractionalOrder alpha,
                                   double initial);

}  // namespace rkvp
