#pragma once

#include <cstdint>
#include <vector>

#include "techdiff/rk4.hpp"

namespace techdiff {

/// One-directional adoption process on n agents: adopters never revert.
/// Event rate at adopter count X is (n-X)*(sigma + h*X/n).
struct DiffusionParams {
    double sigma = 0.0;
    double h = 0.0;
    int n = 1;
};

/// Bidirectional herding process: spontaneous adoption (sigma1),
/// spontaneous abandonment (sigma2), pairwise imitation (h).
/// Birth rate (n-X)*(sigma1 + h*X), death rate X*(sigma2 + h*(n-X)).
struct KirmanParams {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double h = 0.0;
    int n = 1;
};

/// Piecewise-constant sample path of the adopter count. times[0] = 0 holds
/// the initial state; each later entry is one event. All times lie within
/// [0, t_max] of the generating run.
struct JumpPath {
    std::vector<double> times;
    std::vector<int> states;
    int n = 1;
};

/// Exact event-driven simulation of the pure-birth adoption chain from
/// adopter count x0. Stops at absorption (X = n) or once the next event
/// would fall beyond t_max. Deterministic given all arguments.
JumpPath simulate_adoption(const DiffusionParams& p, int x0, double t_max, std::uint64_t seed);

/// Exact event-driven simulation of the bidirectional herding chain.
/// Waiting times are exponential in the total rate; the event direction is
/// chosen proportionally to the birth and death rates.
JumpPath simulate_kirman(const KirmanParams& p, int x0, double t_max, std::uint64_t seed);

/// Independent adoption runs with per-run seeds derived from master_seed.
std::vector<JumpPath> simulate_adoption_ensemble(const DiffusionParams& p, int x0, double t_max,
                                                 int runs, std::uint64_t master_seed);

/// Adopter count of a path at time t (right-continuous step lookup).
int path_state_at(const JumpPath& path, double t);

/// Mean adopter fraction X(t)/n across paths at each grid time.
std::vector<double> ensemble_mean_on_grid(const std::vector<JumpPath>& paths,
                                          const std::vector<double>& grid);

/// Fraction of [0, t_max] the path spends in each state 0..n.
std::vector<double> time_weighted_occupancy(const JumpPath& path, double t_max);

/// Stationary distribution of the herding chain over {0..n} by the
/// detailed-balance recursion pi(X+1) = pi(X) * birth(X) / death(X+1),
/// accumulated in log space and normalized. Requires every death rate for
/// X >= 1 to be positive (otherwise the chain is absorbing).
std::vector<double> stationary_oracle(const KirmanParams& p);

/// TFP path driven by a realized adoption path: the level grows at rate
/// gamma * (1 - X(t)/n), so between events it multiplies by
/// exp(gamma * (1 - X/n) * dt). Exact; sampled at every event time.
Trajectory coupled_tfp_path(const JumpPath& path, double gamma, double a0);

}  // namespace techdiff
