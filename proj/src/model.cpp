#include "techdiff/model.hpp"

#include <cmath>
#include <stdexcept>

namespace techdiff {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::domain_error(msg);
}

}  // namespace

double eval_s(const AdoptionParams& p, double t) {
    require(p.sigma >= 0.0 && p.h >= 0.0, "eval_s: rates must be nonnegative");
    require(p.sigma + p.h > 0.0, "eval_s: sigma + h must be positive");
    require(t >= 0.0, "eval_s: negative time");
    return (p.h + p.sigma) / (p.h + p.sigma * std::exp((p.sigma + p.h) * t));
}

double eval_x(const AdoptionParams& p, double t) {
    return 1.0 - eval_s(p, t);
}

double eval_a_fixed(const FixedFrontierParams& p, double t) {
    require(p.a0 > 0.0 && p.a_m > 0.0 && p.h > 0.0, "eval_a_fixed: parameters must be positive");
    require(p.a0 <= p.a_m, "eval_a_fixed: a0 must not exceed a_m");
    require(t >= 0.0, "eval_a_fixed: negative time");
    if (p.a0 == p.a_m || t == 0.0) return p.a0;
    const double decay = std::exp(-p.a_m * p.h * t / (p.a_m - p.a0));
    return p.a_m * p.a0 / (p.a_m * decay + p.a0 * (1.0 - decay));
}

double eval_frontier(const FrontierParams& f, double t) {
    require(f.a_m0 > 0.0, "eval_frontier: a_m0 must be positive");
    return f.a_m0 * std::exp(f.gamma_m * t);
}

double eval_a_moving(const FrontierParams& f, const CatchUpParams& c, double t) {
    require(f.a_m0 > 0.0, "eval_a_moving: a_m0 must be positive");
    require(c.a0 > 0.0 && c.gamma > 0.0, "eval_a_moving: a0 and gamma must be positive");
    require(t >= 0.0, "eval_a_moving: negative time");
    if (t == 0.0) return c.a0;
    const double d = c.gamma - f.gamma_m;
    const double ratio = f.a_m0 / c.a0;
    if (std::abs(d) <= 1e-9 * c.gamma) {
        return f.a_m0 * std::exp(c.gamma * t) / (c.gamma * t + ratio);
    }
    const double denom = c.gamma * std::expm1(d * t) + ratio * d;
    require(denom > 0.0, "eval_a_moving: nonpositive denominator");
    return f.a_m0 * std::exp(c.gamma * t) * d / denom;
}

double growth_rate_moving(const FrontierParams& f, const CatchUpParams& c, double t) {
    return c.gamma * (1.0 - eval_a_moving(f, c, t) / eval_frontier(f, t));
}

double asymptotic_frontier_ratio(double gamma, double gamma_m) {
    require(gamma_m > 0.0 && gamma > gamma_m, "asymptotic_frontier_ratio: need gamma > gamma_m > 0");
    return 1.0 - gamma_m / gamma;
}

double kremer_tfp(const KremerParams& k, double t) {
    require(k.a0 > 0.0 && k.gamma > 0.0 && k.n > 0.0, "kremer_tfp: parameters must be positive");
    require(t >= 0.0, "kremer_tfp: negative time");
    return k.a0 * std::exp(k.gamma * k.n * t);
}

double rhs_adoption(const AdoptionParams& p, double x) {
    require(p.sigma >= 0.0 && p.h >= 0.0, "rhs_adoption: rates must be nonnegative");
    require(x >= 0.0 && x <= 1.0, "rhs_adoption: x outside [0, 1]");
    return (1.0 - x) * (p.sigma + p.h * x);
}

double rhs_logistic_moving(const FrontierParams& f, double gamma, double a, double t) {
    require(a > 0.0, "rhs_logistic_moving: a must be positive");
    return gamma * a * (1.0 - a / eval_frontier(f, t));
}

}  // namespace techdiff
