#pragma once

#include <functional>
#include <string>
#include <vector>

namespace techdiff {

/// Residual generator: maps a parameter vector to the residual vector
/// model(params) - data.
using ResidualFn = std::function<std::vector<double>(const std::vector<double>&)>;

struct LmOptions {
    double initial_damping = 1e-3;
    double damping_factor = 10.0;
    int max_iterations = 200;
    double ssr_rel_tol = 1e-10;
    double gradient_tol = 1e-10;
    double jacobian_rel_step = 1e-6;
};

/// Outcome of a least-squares fit. Parameter order is shared by params,
/// stderrs, and the rows/columns of the row-major covariance matrix.
/// ssr_trace records the objective at the start and after each accepted
/// step; it is diagnostic only and not serialized.
struct FitResult {
    std::vector<std::string> param_names;
    std::vector<double> params;
    std::vector<double> stderrs;
    std::vector<double> covariance;
    double ssr = 0.0;
    int n_obs = 0;
    int iterations = 0;
    bool converged = false;
    std::vector<std::string> warnings;
    std::vector<double> ssr_trace;
};

/// Levenberg-Marquardt minimization of |residuals(p)|^2.
///
/// Each iteration solves (J'J + damping * diag(J'J)) delta = -J'r; a step
/// is accepted when it lowers the objective (damping then shrinks by the
/// damping factor), otherwise damping grows and the step is retried.
/// Stops when the accepted relative SSR decrease, or the infinity norm of
/// J'r, falls below its tolerance, or at max_iterations. An iteration whose
/// every damping level is rejected with trial SSR no worse than the current
/// value also counts as converged: the objective admits no representable
/// decrease, so the SSR-change condition holds with a drop of zero. J is
/// computed by
/// central finite differences with the configured relative step. The
/// covariance is s^2 (J'J)^-1 at the optimum with s^2 = ssr / (n_obs -
/// n_params). Non-finite trial residuals reject the step and inflate
/// damping; a singular J'J at the optimum raises std::runtime_error.
FitResult lm_minimize(const ResidualFn& residuals, const std::vector<std::string>& names,
                      const std::vector<double>& init, const LmOptions& opts = {});

/// Central-difference Jacobian of the residual vector, row-major
/// n_obs x n_params. Step for parameter j is rel_step * |p_j|, falling
/// back to rel_step when p_j = 0.
std::vector<double> numeric_jacobian(const ResidualFn& residuals, const std::vector<double>& params,
                                     double rel_step);

/// Square roots of the covariance diagonal, in parameter order.
std::vector<double> standard_errors(const FitResult& fit);

}  // namespace techdiff
