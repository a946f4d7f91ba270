#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "techdiff/levmar.hpp"
#include "techdiff/model.hpp"

namespace techdiff {

/// Annual TFP observations for one country. Values are levels
/// (USD per hour, PPP), strictly positive; years strictly increasing.
struct TfpSeries {
    std::string country;
    std::vector<int> years;
    std::vector<double> values;
};

/// Calendar year mapped to model time t = 0.
struct TimeOrigin {
    int t0_year = 0;
};

/// Fits the exponential frontier path a_m0 * e^(gamma_m t) to a series in
/// levels, t = year - t0_year. The initial guess comes from a log-linear
/// regression. Parameter order: a_m0, gamma_m.
FitResult fit_frontier(const TfpSeries& series, TimeOrigin origin, const LmOptions& opts = {});

/// Fits the catch-up path toward a fixed frontier in levels, recovering
/// (a0, gamma). Starts from a0 = first observation, gamma = 0.1 unless an
/// override is given. A fit with gamma <= gamma_m or a0 <= 0 is flagged in
/// warnings, not rejected. Parameter order: a0, gamma.
FitResult fit_catchup(const TfpSeries& series, const FrontierParams& frontier, TimeOrigin origin,
                      const LmOptions& opts = {},
                      const std::optional<std::vector<double>>& init_override = std::nullopt);

/// Catch-up levels at t = year - t0_year for each requested year.
std::vector<std::pair<int, double>> project(const FrontierParams& frontier, const CatchUpParams& c,
                                            TimeOrigin origin, const std::vector<int>& years);

/// Orders fits by descending gamma, ties broken by country name. Every fit
/// must carry a parameter named "gamma".
std::vector<std::pair<std::string, FitResult>> rank_by_gamma(
    std::vector<std::pair<std::string, FitResult>> fits);

/// Value of the named parameter in a fit; throws std::domain_error when absent.
double fit_param(const FitResult& fit, const std::string& name);

}  // namespace techdiff
