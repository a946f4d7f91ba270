#pragma once

#include <functional>
#include <vector>

namespace techdiff {

/// Scalar first-order ODE dy/dt = rhs(t, y) with initial value y0 at t_start.
struct OdeProblem {
    std::function<double(double, double)> rhs;
    double y0 = 0.0;
    double t_start = 0.0;
    double t_end = 1.0;
};

/// Dense solution: values[i] is the state at times[i].
struct Trajectory {
    std::vector<double> times;
    std::vector<double> values;
};

/// Classic fixed-step fourth-order Runge-Kutta.
///
/// Steps with the given size; the final partial step is shortened so the
/// last grid point equals t_end exactly. Throws std::domain_error on a
/// nonpositive step or an inverted span, std::runtime_error if any stage
/// produces a non-finite value.
Trajectory integrate_rk4(const OdeProblem& problem, double step);

/// Richardson error estimate: max-norm gap at the coarse grid points
/// between the solution at `step` and the solution recomputed with two
/// half steps per interval. Shrinks like step^4 for smooth problems.
double richardson_error_estimate(const OdeProblem& problem, double step);

}  // namespace techdiff
