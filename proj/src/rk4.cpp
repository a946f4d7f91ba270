#include "techdiff/rk4.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace techdiff {

namespace {

double rk4_step(const OdeProblem& p, double t, double y, double h) {
    const double k1 = p.rhs(t, y);
    const double k2 = p.rhs(t + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = p.rhs(t + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = p.rhs(t + h, y + h * k3);
    const double out = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(out)) throw std::runtime_error("integrate_rk4: non-finite stage value");
    return out;
}

void validate(const OdeProblem& p, double step) {
    if (!p.rhs) throw std::domain_error("integrate_rk4: missing rhs");
    if (!(step > 0.0)) throw std::domain_error("integrate_rk4: step must be positive");
    if (!(p.t_end >= p.t_start)) throw std::domain_error("integrate_rk4: t_end before t_start");
}

Trajectory integrate_substeps(const OdeProblem& p, double step, int substeps) {
    validate(p, step);
    Trajectory traj;
    traj.times.push_back(p.t_start);
    traj.values.push_back(p.y0);
    if (p.t_end == p.t_start) return traj;

    const double span = p.t_end - p.t_start;
    auto n_steps = static_cast<std::size_t>(std::floor(span / step));
    double remainder = span - static_cast<double>(n_steps) * step;
    if (remainder <= step * 1e-12) remainder = 0.0;

    double t = p.t_start;
    double y = p.y0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double h = step / substeps;
        for (int s = 0; s < substeps; ++s) y = rk4_step(p, t + s * h, y, h);
        t = p.t_start + static_cast<double>(i + 1) * step;
        traj.times.push_back(t);
        traj.values.push_back(y);
    }
    if (remainder > 0.0) {
        const double h = remainder / substeps;
        for (int s = 0; s < substeps; ++s) y = rk4_step(p, t + s * h, y, h);
        traj.times.push_back(p.t_end);
        traj.values.push_back(y);
    } else {
        traj.times.back() = p.t_end;
    }
    return traj;
}

}  // namespace

Trajectory integrate_rk4(const OdeProblem& problem, double step) {
    return integrate_substeps(problem, step, 1);
}

double richardson_error_estimate(const OdeProblem& problem, double step) {
    const Trajectory coarse = integrate_substeps(problem, step, 1);
    const Trajectory fine = integrate_substeps(problem, step, 2);
    double err = 0.0;
    for (std::size_t i = 0; i < coarse.values.size(); ++i) {
        err = std::max(err, std::abs(coarse.values[i] - fine.values[i]));
    }
    return err;
}

}  // namespace techdiff
