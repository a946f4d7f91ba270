#include "techdiff/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace techdiff {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::domain_error(msg);
}

void check_series(const TfpSeries& s, TimeOrigin origin, const char* who) {
    if (s.years.size() != s.values.size()) {
        throw std::domain_error(std::string(who) + ": years/values length mismatch");
    }
    if (s.years.size() < 3) throw std::domain_error(std::string(who) + ": need at least 3 observations");
    for (std::size_t i = 1; i < s.years.size(); ++i) {
        if (s.years[i] <= s.years[i - 1]) {
            throw std::domain_error(std::string(who) + ": years not strictly increasing");
        }
    }
    for (double v : s.values) {
        if (!(v > 0.0)) throw std::domain_error(std::string(who) + ": nonpositive TFP value");
    }
    if (origin.t0_year > s.years.front()) {
        throw std::domain_error(std::string(who) + ": time origin after first observation");
    }
}

std::vector<double> model_times(const TfpSeries& s, TimeOrigin origin) {
    std::vector<double> t(s.years.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = s.years[i] - origin.t0_year;
    return t;
}

}  // namespace

FitResult fit_frontier(const TfpSeries& series, TimeOrigin origin, const LmOptions& opts) {
    check_series(series, origin, "fit_frontier");
    const std::vector<double> t = model_times(series, origin);

    double mean_t = 0.0;
    double mean_ln = 0.0;
    const auto n = static_cast<double>(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        mean_t += t[i];
        mean_ln += std::log(series.values[i]);
    }
    mean_t /= n;
    mean_ln /= n;
    double cov = 0.0;
    double var = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        cov += (t[i] - mean_t) * (std::log(series.values[i]) - mean_ln);
        var += (t[i] - mean_t) * (t[i] - mean_t);
    }
    const double slope = cov / var;
    const double intercept = mean_ln - slope * mean_t;

    const auto residuals = [&](const std::vector<double>& p) {
        std::vector<double> r(t.size());
        const FrontierParams f{p[0], p[1]};
        for (std::size_t i = 0; i < t.size(); ++i) {
            r[i] = eval_frontier(f, t[i]) - series.values[i];
        }
        return r;
    };
    return lm_minimize(residuals, {"a_m0", "gamma_m"}, {std::exp(intercept), slope}, opts);
}

FitResult fit_catchup(const TfpSeries& series, const FrontierParams& frontier, TimeOrigin origin,
                      const LmOptions& opts, const std::optional<std::vector<double>>& init_override) {
    check_series(series, origin, "fit_catchup");
    const std::vector<double> t = model_times(series, origin);

    const auto residuals = [&](const std::vector<double>& p) {
        std::vector<double> r(t.size());
        const CatchUpParams c{p[0], p[1]};
        for (std::size_t i = 0; i < t.size(); ++i) {
            r[i] = eval_a_moving(frontier, c, t[i]) - series.values[i];
        }
        return r;
    };
    std::vector<double> init{series.values.front(), 0.1};
    if (init_override) {
        require(init_override->size() == 2, "fit_catchup: init override needs 2 values");
        init = *init_override;
    }
    FitResult fit = lm_minimize(residuals, {"a0", "gamma"}, init, opts);
    if (fit.params[1] <= frontier.gamma_m) {
        fit.warnings.push_back("gamma does not exceed frontier growth rate gamma_m");
    }
    if (fit.params[0] <= 0.0) {
        fit.warnings.push_back("a0 not positive");
    }
    return fit;
}

std::vector<std::pair<int, double>> project(const FrontierParams& frontier, const CatchUpParams& c,
                                            TimeOrigin origin, const std::vector<int>& years) {
    std::vector<std::pair<int, double>> out;
    out.reserve(years.size());
    for (int year : years) {
        require(year >= origin.t0_year, "project: year before time origin");
        out.emplace_back(year, eval_a_moving(frontier, c, static_cast<double>(year - origin.t0_year)));
    }
    return out;
}

double fit_param(const FitResult& fit, const std::string& name) {
    for (std::size_t i = 0; i < fit.param_names.size(); ++i) {
        if (fit.param_names[i] == name) return fit.params[i];
    }
    throw std::domain_error("fit_param: no parameter named " + name);
}

std::vector<std::pair<std::string, FitResult>> rank_by_gamma(
    std::vector<std::pair<std::string, FitResult>> fits) {
    for (const auto& f : fits) fit_param(f.second, "gamma");
    std::stable_sort(fits.begin(), fits.end(), [](const auto& a, const auto& b) {
        const double ga = fit_param(a.second, "gamma");
        const double gb = fit_param(b.second, "gamma");
        if (ga != gb) return ga > gb;
        return a.first < b.first;
    });
    return fits;
}

}  // namespace techdiff
