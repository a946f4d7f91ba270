#pragma once

namespace techdiff {

/// Rates of the one-directional adoption process. Agents switch from
/// non-adopter to adopter either spontaneously (sigma) or by imitating an
/// adopter (h); nobody switches back. Units are 1/time.
struct AdoptionParams {
    double sigma = 0.0;
    double h = 0.0;
};

/// Convergence toward a fixed ceiling: initial level a0, ceiling a_m, and
/// convergence-speed parameter h.
struct FixedFrontierParams {
    double a0 = 1.0;
    double a_m = 2.0;
    double h = 0.05;
};

/// Exponentially growing technology frontier A_m(t) = a_m0 * e^(gamma_m t).
struct FrontierParams {
    double a_m0 = 1.0;
    double gamma_m = 0.0;
};

/// Catch-up trajectory toward a moving frontier: initial level a0 and
/// diffusion-driven growth rate gamma (1/year).
struct CatchUpParams {
    double a0 = 1.0;
    double gamma = 0.1;
};

/// Constant-innovator growth: n innovators each contributing gamma.
struct KremerParams {
    double a0 = 1.0;
    double gamma = 0.01;
    double n = 1.0;
};

/// Non-adopter share s(t) = (h+sigma) / (h + sigma e^((sigma+h)t)), s(0) = 1.
double eval_s(const AdoptionParams& p, double t);

/// Adopter share x(t) = 1 - s(t).
double eval_x(const AdoptionParams& p, double t);

/// Level path toward a fixed ceiling,
///   A(t) = a_m a0 / (a_m e^(-c t) + a0 (1 - e^(-c t))),  c = a_m h / (a_m - a0).
/// The a0 == a_m degeneracy is the constant path a0.
double eval_a_fixed(const FixedFrontierParams& p, double t);

double eval_frontier(const FrontierParams& f, double t);

/// Level path toward a moving ceiling,
///   A(t) = a_m0 e^(g t) d / (g (e^(d t) - 1) + (a_m0/a0) d),  d = g - gamma_m,
/// switching to the analytic limit a_m0 e^(g t) / (g t + a_m0/a0) when
/// |d| <= 1e-9 g.
double eval_a_moving(const FrontierParams& f, const CatchUpParams& c, double t);

/// Instantaneous growth rate gamma (1 - A(t)/A_m(t)) of the moving-ceiling path.
double growth_rate_moving(const FrontierParams& f, const CatchUpParams& c, double t);

/// Long-run limit of A(t)/A_m(t): 1 - gamma_m/gamma. Requires gamma > gamma_m > 0.
double asymptotic_frontier_ratio(double gamma, double gamma_m);

/// a0 * e^(gamma n t).
double kremer_tfp(const KremerParams& k, double t);

/// dx/dt = (1 - x)(sigma + h x).
double rhs_adoption(const AdoptionParams& p, double x);

/// dA/dt = gamma A (1 - A / A_m(t)) with the exponential frontier ceiling.
double rhs_logistic_moving(const FrontierParams& f, double gamma, double a, double t);

}  // namespace techdiff
