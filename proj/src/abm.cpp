#include "techdiff/abm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "techdiff/rng.hpp"

namespace techdiff {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::domain_error(msg);
}

void check_run_args(int n, int x0, double t_max, const char* who) {
    if (x0 < 0 || x0 > n) throw std::domain_error(std::string(who) + ": x0 outside [0, n]");
    if (!(t_max > 0.0)) throw std::domain_error(std::string(who) + ": t_max must be positive");
}

double exp_wait(std::mt19937_64& rng, double rate) {
    return -std::log(uniform_open(rng)) / rate;
}

}  // namespace

JumpPath simulate_adoption(const DiffusionParams& p, int x0, double t_max, std::uint64_t seed) {
    require(p.n >= 1, "simulate_adoption: n must be at least 1");
    require(p.sigma >= 0.0 && p.h >= 0.0, "simulate_adoption: rates must be nonnegative");
    require(p.sigma + p.h > 0.0, "simulate_adoption: sigma + h must be positive");
    check_run_args(p.n, x0, t_max, "simulate_adoption");

    std::mt19937_64 rng(seed);
    JumpPath path;
    path.n = p.n;
    path.times.reserve(static_cast<std::size_t>(p.n - x0) + 1);
    path.states.reserve(static_cast<std::size_t>(p.n - x0) + 1);
    double t = 0.0;
    int x = x0;
    path.times.push_back(t);
    path.states.push_back(x);
    for (;;) {
        const double rate = (p.n - x) * (p.sigma + p.h * x / p.n);
        if (rate <= 0.0) break;
        const double t_next = t + exp_wait(rng, rate);
        if (t_next > t_max) break;
        t = t_next;
        ++x;
        path.times.push_back(t);
        path.states.push_back(x);
    }
    return path;
}

JumpPath simulate_kirman(const KirmanParams& p, int x0, double t_max, std::uint64_t seed) {
    require(p.n >= 1, "simulate_kirman: n must be at least 1");
    require(p.sigma1 >= 0.0 && p.sigma2 >= 0.0 && p.h >= 0.0,
            "simulate_kirman: rates must be nonnegative");
    require(p.sigma1 + p.sigma2 + p.h > 0.0, "simulate_kirman: all rates are zero");
    check_run_args(p.n, x0, t_max, "simulate_kirman");

    std::mt19937_64 rng(seed);
    JumpPath path;
    path.n = p.n;
    double t = 0.0;
    int x = x0;
    path.times.push_back(t);
    path.states.push_back(x);
    for (;;) {
        const double birth = (p.n - x) * (p.sigma1 + p.h * x);
        const double death = x * (p.sigma2 + p.h * (p.n - x));
        const double total = birth + death;
        if (total <= 0.0) break;
        const double t_next = t + exp_wait(rng, total);
        if (t_next > t_max) break;
        t = t_next;
        x += (uniform_open(rng) < birth / total) ? 1 : -1;
        path.times.push_back(t);
        path.states.push_back(x);
    }
    return path;
}

std::vector<JumpPath> simulate_adoption_ensemble(const DiffusionParams& p, int x0, double t_max,
                                                 int runs, std::uint64_t master_seed) {
    require(runs >= 1, "simulate_adoption_ensemble: runs must be at least 1");
    std::vector<JumpPath> out;
    out.reserve(static_cast<std::size_t>(runs));
    for (int i = 0; i < runs; ++i) {
        out.push_back(simulate_adoption(p, x0, t_max,
                                        derive_run_seed(master_seed, static_cast<std::uint64_t>(i))));
    }
    return out;
}

int path_state_at(const JumpPath& path, double t) {
    require(!path.times.empty(), "path_state_at: empty path");
    require(t >= path.times.front(), "path_state_at: time before path start");
    const auto it = std::upper_bound(path.times.begin(), path.times.end(), t);
    const auto idx = static_cast<std::size_t>(it - path.times.begin()) - 1;
    return path.states[idx];
}

std::vector<double> ensemble_mean_on_grid(const std::vector<JumpPath>& paths,
                                          const std::vector<double>& grid) {
    require(!paths.empty(), "ensemble_mean_on_grid: no paths");
    const int n = paths.front().n;
    for (const auto& p : paths) {
        require(p.n == n, "ensemble_mean_on_grid: paths disagree on agent count");
    }
    std::vector<double> means(grid.size(), 0.0);
    for (const auto& p : paths) {
        for (std::size_t g = 0; g < grid.size(); ++g) {
            means[g] += static_cast<double>(path_state_at(p, grid[g])) / n;
        }
    }
    for (auto& m : means) m /= static_cast<double>(paths.size());
    return means;
}

std::vector<double> time_weighted_occupancy(const JumpPath& path, double t_max) {
    require(!path.times.empty(), "time_weighted_occupancy: empty path");
    require(t_max > 0.0 && t_max >= path.times.back(),
            "time_weighted_occupancy: t_max before last event");
    std::vector<double> occ(static_cast<std::size_t>(path.n) + 1, 0.0);
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        const double seg_end = (i + 1 < path.times.size()) ? path.times[i + 1] : t_max;
        occ[static_cast<std::size_t>(path.states[i])] += seg_end - path.times[i];
    }
    for (auto& o : occ) o /= t_max;
    return occ;
}

std::vector<double> stationary_oracle(const KirmanParams& p) {
    require(p.n >= 1, "stationary_oracle: n must be at least 1");
    require(p.sigma1 >= 0.0 && p.sigma2 >= 0.0 && p.h >= 0.0,
            "stationary_oracle: rates must be nonnegative");
    for (int x = 1; x <= p.n; ++x) {
        const double death = x * (p.sigma2 + p.h * (p.n - x));
        require(death > 0.0, "stationary_oracle: zero death rate, chain is absorbing");
    }
    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> logpi(static_cast<std::size_t>(p.n) + 1, neg_inf);
    logpi[0] = 0.0;
    for (int x = 0; x < p.n; ++x) {
        const double birth = (p.n - x) * (p.sigma1 + p.h * x);
        if (birth == 0.0 || logpi[static_cast<std::size_t>(x)] == neg_inf) break;
        const double death = (x + 1) * (p.sigma2 + p.h * (p.n - x - 1));
        logpi[static_cast<std::size_t>(x) + 1] =
            logpi[static_cast<std::size_t>(x)] + std::log(birth) - std::log(death);
    }
    const double m = *std::max_element(logpi.begin(), logpi.end());
    std::vector<double> pi(logpi.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logpi.size(); ++i) {
        pi[i] = (logpi[i] == neg_inf) ? 0.0 : std::exp(logpi[i] - m);
        sum += pi[i];
    }
    for (auto& v : pi) v /= sum;
    return pi;
}

Trajectory coupled_tfp_path(const JumpPath& path, double gamma, double a0) {
    require(gamma > 0.0, "coupled_tfp_path: gamma must be positive");
    require(a0 > 0.0, "coupled_tfp_path: a0 must be positive");
    require(!path.times.empty(), "coupled_tfp_path: empty path");
    Trajectory traj;
    traj.times = path.times;
    traj.values.resize(path.times.size());
    traj.values[0] = a0;
    double exponent = 0.0;
    for (std::size_t i = 0; i + 1 < path.times.size(); ++i) {
        const double share = 1.0 - static_cast<double>(path.states[i]) / path.n;
        exponent += share * (path.times[i + 1] - path.times[i]);
        traj.values[i + 1] = a0 * std::exp(gamma * exponent);
    }
    return traj;
}

}  // namespace techdiff
