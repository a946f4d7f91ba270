#include "techdiff/levmar.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace techdiff {

namespace {

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::vector<double> eval_guarded(const ResidualFn& f, const std::vector<double>& p) {
    try {
        return f(p);
    } catch (const std::domain_error&) {
        return {std::numeric_limits<double>::quiet_NaN()};
    }
}

double sum_sq(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

/// Solves a k x k system in place by Gaussian elimination with partial
/// pivoting. Returns false on a vanishing pivot.
bool solve_dense(std::vector<double> a, std::vector<double> b, std::size_t k,
                 std::vector<double>& out) {
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < k; ++row) {
            if (std::abs(a[row * k + col]) > std::abs(a[pivot * k + col])) pivot = row;
        }
        if (std::abs(a[pivot * k + col]) < 1e-300) return false;
        if (pivot != col) {
            for (std::size_t j = 0; j < k; ++j) std::swap(a[col * k + j], a[pivot * k + j]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t row = col + 1; row < k; ++row) {
            const double f = a[row * k + col] / a[col * k + col];
            for (std::size_t j = col; j < k; ++j) a[row * k + j] -= f * a[col * k + j];
            b[row] -= f * b[col];
        }
    }
    out.assign(k, 0.0);
    for (std::size_t row = k; row-- > 0;) {
        double s = b[row];
        for (std::size_t j = row + 1; j < k; ++j) s -= a[row * k + j] * out[j];
        out[row] = s / a[row * k + row];
    }
    return all_finite(out);
}

bool invert_dense(const std::vector<double>& a, std::size_t k, std::vector<double>& inv) {
    inv.assign(k * k, 0.0);
    for (std::size_t col = 0; col < k; ++col) {
        std::vector<double> e(k, 0.0);
        e[col] = 1.0;
        std::vector<double> x;
        if (!solve_dense(a, e, k, x)) return false;
        for (std::size_t row = 0; row < k; ++row) inv[row * k + col] = x[row];
    }
    return true;
}

struct NormalEquations {
    std::vector<double> jtj;
    std::vector<double> jtr;
};

NormalEquations normal_equations(const std::vector<double>& jac, const std::vector<double>& r,
                                 std::size_t n_obs, std::size_t k) {
    NormalEquations ne;
    ne.jtj.assign(k * k, 0.0);
    ne.jtr.assign(k, 0.0);
    for (std::size_t i = 0; i < n_obs; ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            ne.jtr[a] += jac[i * k + a] * r[i];
            for (std::size_t b = a; b < k; ++b) ne.jtj[a * k + b] += jac[i * k + a] * jac[i * k + b];
        }
    }
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < a; ++b) ne.jtj[a * k + b] = ne.jtj[b * k + a];
    }
    return ne;
}

}  // namespace

std::vector<double> numeric_jacobian(const ResidualFn& residuals, const std::vector<double>& params,
                                     double rel_step) {
    if (!(rel_step > 0.0)) throw std::domain_error("numeric_jacobian: step must be positive");
    const std::size_t k = params.size();
    std::vector<double> jac;
    for (std::size_t j = 0; j < k; ++j) {
        const double h = (params[j] != 0.0) ? rel_step * std::abs(params[j]) : rel_step;
        std::vector<double> lo = params;
        std::vector<double> hi = params;
        lo[j] -= h;
        hi[j] += h;
        const std::vector<double> r_lo = residuals(lo);
        const std::vector<double> r_hi = residuals(hi);
        if (r_lo.size() != r_hi.size()) {
            throw std::runtime_error("numeric_jacobian: residual length changed");
        }
        if (jac.empty()) jac.assign(r_lo.size() * k, 0.0);
        for (std::size_t i = 0; i < r_lo.size(); ++i) {
            jac[i * k + j] = (r_hi[i] - r_lo[i]) / (2.0 * h);
        }
    }
    if (!all_finite(jac)) throw std::runtime_error("numeric_jacobian: non-finite derivative");
    return jac;
}

FitResult lm_minimize(const ResidualFn& residuals, const std::vector<std::string>& names,
                      const std::vector<double>& init, const LmOptions& opts) {
    if (names.size() != init.size()) throw std::domain_error("lm_minimize: names/init length mismatch");
    if (init.empty()) throw std::domain_error("lm_minimize: no parameters");
    if (!(opts.damping_factor > 1.0) || !(opts.initial_damping > 0.0) || opts.max_iterations < 1) {
        throw std::domain_error("lm_minimize: invalid options");
    }
    const std::size_t k = init.size();

    FitResult fit;
    fit.param_names = names;
    fit.params = init;

    std::vector<double> r = residuals(init);
    if (r.size() <= k) throw std::domain_error("lm_minimize: need more residuals than parameters");
    if (!all_finite(r)) throw std::domain_error("lm_minimize: residuals not finite at init");
    const std::size_t n_obs = r.size();
    fit.n_obs = static_cast<int>(n_obs);

    double ssr = sum_sq(r);
    fit.ssr_trace.push_back(ssr);
    double damping = opts.initial_damping;

    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        const std::vector<double> jac = numeric_jacobian(residuals, fit.params, opts.jacobian_rel_step);
        const NormalEquations ne = normal_equations(jac, r, n_obs, k);

        double grad_norm = 0.0;
        for (double g : ne.jtr) grad_norm = std::max(grad_norm, std::abs(g));
        if (grad_norm < opts.gradient_tol) {
            fit.converged = true;
            break;
        }

        bool accepted = false;
        double best_rejected = std::numeric_limits<double>::infinity();
        while (damping <= 1e15) {
            std::vector<double> damped = ne.jtj;
            for (std::size_t a = 0; a < k; ++a) damped[a * k + a] += damping * ne.jtj[a * k + a];
            std::vector<double> neg_g(k);
            for (std::size_t a = 0; a < k; ++a) neg_g[a] = -ne.jtr[a];
            std::vector<double> delta;
            if (!solve_dense(damped, neg_g, k, delta)) {
                damping *= opts.damping_factor;
                continue;
            }
            std::vector<double> trial = fit.params;
            for (std::size_t a = 0; a < k; ++a) trial[a] += delta[a];
            const std::vector<double> r_trial = eval_guarded(residuals, trial);
            const double ssr_trial =
                (r_trial.size() == n_obs && all_finite(r_trial)) ? sum_sq(r_trial)
                                                                 : std::numeric_limits<double>::infinity();
            if (ssr_trial < ssr) {
                double max_rel_step = 0.0;
                for (std::size_t a = 0; a < k; ++a) {
                    max_rel_step = std::max(max_rel_step,
                                            std::abs(delta[a]) / std::max(std::abs(trial[a]), 1.0));
                }
                fit.params = trial;
                r = r_trial;
                const double rel_drop = (ssr - ssr_trial) / std::max(ssr, DBL_MIN);
                ssr = ssr_trial;
                fit.ssr_trace.push_back(ssr);
                fit.iterations = iter;
                damping = std::max(damping / opts.damping_factor, 1e-15);
                accepted = true;
                if (rel_drop < opts.ssr_rel_tol || max_rel_step < 1e-15) fit.converged = true;
                break;
            }
            best_rejected = std::min(best_rejected, ssr_trial);
            damping *= opts.damping_factor;
        }
        if (!accepted) {
            // Every damping level was rejected.  If the best trial matched the
            // current SSR to within the relative tolerance, the fit has stalled
            // at the numerical floor: no representable decrease exists, which is
            // the SSR-change stopping condition with a drop of zero.  A sweep of
            // divergent or non-finite trials stays unconverged.
            fit.converged = best_rejected <= ssr * (1.0 + opts.ssr_rel_tol);
            break;
        }
        if (fit.converged) break;
    }

    fit.ssr = ssr;

    const std::vector<double> jac = numeric_jacobian(residuals, fit.params, opts.jacobian_rel_step);
    const NormalEquations ne = normal_equations(jac, r, n_obs, k);
    std::vector<double> jtj_inv;
    if (!invert_dense(ne.jtj, k, jtj_inv)) {
        throw std::runtime_error("lm_minimize: rank-deficient normal equations at optimum");
    }
    const double s2 = ssr / static_cast<double>(n_obs - k);
    fit.covariance.assign(k * k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            fit.covariance[a * k + b] = s2 * 0.5 * (jtj_inv[a * k + b] + jtj_inv[b * k + a]);
        }
    }
    fit.stderrs = standard_errors(fit);
    return fit;
}

std::vector<double> standard_errors(const FitResult& fit) {
    const std::size_t k = fit.params.size();
    if (fit.covariance.size() != k * k) throw std::domain_error("standard_errors: missing covariance");
    std::vector<double> out(k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
        out[a] = std::sqrt(std::max(fit.covariance[a * k + a], 0.0));
    }
    return out;
}

}  // namespace techdiff
