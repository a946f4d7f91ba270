#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "techdiff/calibrate.hpp"
#include "techdiff/model.hpp"
#include "techdiff/reference.hpp"
#include "techdiff/rng.hpp"

using namespace techdiff;

namespace {

constexpr TimeOrigin kOrigin{1995};

TfpSeries frontier_series(const FrontierParams& f, int n_years) {
    TfpSeries s;
    s.country = "Reference";
    for (int i = 0; i < n_years; ++i) {
        s.years.push_back(kOrigin.t0_year + i);
        s.values.push_back(eval_frontier(f, static_cast<double>(i)));
    }
    return s;
}

TfpSeries catchup_series(const FrontierParams& f, const CatchUpParams& c, int n_years) {
    TfpSeries s;
    s.country = "Synthetic";
    for (int i = 0; i < n_years; ++i) {
        s.years.push_back(kOrigin.t0_year + i);
        s.values.push_back(eval_a_moving(f, c, static_cast<double>(i)));
    }
    return s;
}

FitResult table_row_fit(const reference::CountryCalibration& row) {
    FitResult fit;
    fit.param_names = {"a0", "gamma"};
    fit.params = {row.a0, row.gamma};
    return fit;
}

}  // namespace

TEST_SUITE("calibrate") {

TEST_CASE("frontier fit recovers exact exponential data") {
    const FitResult de = fit_frontier(frontier_series(reference::germany_frontier, 29), kOrigin);
    CHECK(de.converged);
    CHECK(de.params[0] == doctest::Approx(reference::germany_frontier.a_m0).epsilon(1e-8));
    CHECK(de.params[1] == doctest::Approx(reference::germany_frontier.gamma_m).epsilon(1e-8));
    CHECK(de.param_names == std::vector<std::string>{"a_m0", "gamma_m"});
    CHECK(de.n_obs == 29);
    CHECK(de.ssr < 1e-16);

    const FitResult us = fit_frontier(frontier_series(reference::us_frontier, 29), kOrigin);
    CHECK(us.converged);
    CHECK(us.params[0] == doctest::Approx(reference::us_frontier.a_m0).epsilon(1e-8));
    CHECK(us.params[1] == doctest::Approx(reference::us_frontier.gamma_m).epsilon(1e-8));
}

TEST_CASE("catch-up fit recovers exact generator parameters") {
    const CatchUpParams truth{5.0, 0.12};
    const TfpSeries s = catchup_series(reference::germany_frontier, truth, 30);
    const FitResult fit = fit_catchup(s, reference::germany_frontier, kOrigin);
    CHECK(fit.converged);
    CHECK(fit.warnings.empty());
    CHECK(fit.params[0] == doctest::Approx(truth.a0).epsilon(1e-6));
    CHECK(fit.params[1] == doctest::Approx(truth.gamma).epsilon(1e-6));
    CHECK(fit.ssr < 1e-12);
}

TEST_CASE("catch-up fit identifies random generators from noiseless data") {
    std::mt19937_64 gen(20240817);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 8; ++rep) {
        const FrontierParams f{20.0 + 30.0 * u(gen), 0.01 + 0.04 * u(gen)};
        const CatchUpParams truth{f.a_m0 * (0.1 + 0.7 * u(gen)), f.gamma_m + 0.03 + 0.12 * u(gen)};
        const FitResult fit = fit_catchup(catchup_series(f, truth, 30), f, kOrigin);
        CAPTURE(rep);
        REQUIRE(fit.converged);
        CHECK(fit.warnings.empty());
        CHECK(fit.params[0] == doctest::Approx(truth.a0).epsilon(1e-5));
        CHECK(fit.params[1] == doctest::Approx(truth.gamma).epsilon(1e-5));
    }
}

TEST_CASE("catch-up fit tolerates multiplicative noise and reports honest spread") {
    const CatchUpParams truth{5.0, 0.12};
    const int n_seeds = 20;
    int within_5pct = 0;
    std::vector<double> gammas;
    double stderr_sum = 0.0;

    for (int seed = 0; seed < n_seeds; ++seed) {
        std::mt19937_64 engine(derive_run_seed(90210, static_cast<std::uint64_t>(seed)));
        NormalSampler normal;
        TfpSeries s = catchup_series(reference::germany_frontier, truth, 30);
        for (double& v : s.values) v *= 1.0 + 0.02 * normal(engine);
        const FitResult fit = fit_catchup(s, reference::germany_frontier, kOrigin);
        CAPTURE(seed);
        REQUIRE(fit.converged);
        CHECK(fit.iterations <= 100);
        const double gamma = fit_param(fit, "gamma");
        gammas.push_back(gamma);
        stderr_sum += fit.stderrs[1];
        if (std::abs(gamma - truth.gamma) / truth.gamma < 0.05) ++within_5pct;
    }
    CHECK(within_5pct >= 18);

    double mean = 0.0;
    for (double g : gammas) mean += g;
    mean /= n_seeds;
    double var = 0.0;
    for (double g : gammas) var += (g - mean) * (g - mean);
    const double sd = std::sqrt(var / (n_seeds - 1));
    const double mean_stderr = stderr_sum / n_seeds;
    CHECK(sd / mean_stderr > 0.5);
    CHECK(sd / mean_stderr < 2.0);
}

TEST_CASE("refitting from a fitted optimum is idempotent") {
    const CatchUpParams truth{5.0, 0.12};
    std::mt19937_64 engine(derive_run_seed(90210, 3));
    NormalSampler normal;
    TfpSeries s = catchup_series(reference::germany_frontier, truth, 30);
    for (double& v : s.values) v *= 1.0 + 0.02 * normal(engine);

    const FitResult first = fit_catchup(s, reference::germany_frontier, kOrigin);
    const FitResult again =
        fit_catchup(s, reference::germany_frontier, kOrigin, {}, first.params);
    CHECK(again.converged);
    CHECK(again.iterations <= 3);
    CHECK(again.params[0] == doctest::Approx(first.params[0]).epsilon(1e-8));
    CHECK(again.params[1] == doctest::Approx(first.params[1]).epsilon(1e-8));
}

TEST_CASE("data growing exactly at the frontier rate hits the domain guard") {
    // The fitted gamma walks down toward gamma_m; once it is within the
    // finite-difference step of the boundary the curve evaluation rejects
    // the probe point. The failure surfaces as a domain error, not a hang.
    const FrontierParams f = reference::germany_frontier;
    const TfpSeries s = catchup_series(f, {5.0, f.gamma_m}, 30);
    CHECK_THROWS_AS(fit_catchup(s, f, kOrigin), std::domain_error);
}

TEST_CASE("series validation rejects malformed input") {
    const TfpSeries good = catchup_series(reference::germany_frontier, {5.0, 0.12}, 30);

    TfpSeries s = good;
    s.years.resize(2);
    s.values.resize(2);
    CHECK_THROWS_AS(fit_catchup(s, reference::germany_frontier, kOrigin), std::domain_error);

    s = good;
    s.values[4] = 0.0;
    CHECK_THROWS_AS(fit_catchup(s, reference::germany_frontier, kOrigin), std::domain_error);

    s = good;
    std::swap(s.years[3], s.years[4]);
    CHECK_THROWS_AS(fit_catchup(s, reference::germany_frontier, kOrigin), std::domain_error);

    s = good;
    s.values.pop_back();
    CHECK_THROWS_AS(fit_catchup(s, reference::germany_frontier, kOrigin), std::domain_error);

    CHECK_THROWS_AS(fit_frontier(good, TimeOrigin{good.years.front() + 1}), std::domain_error);

    CHECK_THROWS_AS(fit_catchup(good, reference::germany_frontier, kOrigin, {},
                                std::vector<double>{5.0}),
                    std::domain_error);
}

TEST_CASE("projection evaluates the catch-up curve at calendar years") {
    const FrontierParams f = reference::germany_frontier;
    const CatchUpParams c{reference::germany_calibrations[0].a0,
                          reference::germany_calibrations[0].gamma};
    const auto rows = project(f, c, kOrigin, {1995, 2030, 2050});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].first == 1995);
    CHECK(rows[0].second == c.a0);
    CHECK(rows[1].second == eval_a_moving(f, c, 35.0));
    CHECK(rows[2].second == eval_a_moving(f, c, 55.0));
    CHECK(rows[1].second == doctest::Approx(72.7955).epsilon(5e-3));

    CHECK_THROWS_AS(project(f, c, kOrigin, {1994}), std::domain_error);
}

TEST_CASE("ranking sorts by descending gamma with name tiebreak") {
    std::vector<std::pair<std::string, FitResult>> fits;
    for (const auto& row : reference::germany_calibrations) {
        fits.emplace_back(row.country, table_row_fit(row));
    }
    std::mt19937_64 gen(99);
    std::shuffle(fits.begin(), fits.end(), gen);

    const auto ranked = rank_by_gamma(fits);
    REQUIRE(ranked.size() == reference::germany_calibrations.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        CHECK(ranked[i].first == reference::germany_calibrations[i].country);
    }

    FitResult a;
    a.param_names = {"gamma"};
    a.params = {0.1};
    FitResult b = a;
    const auto tied = rank_by_gamma({{"Zeta", a}, {"Alpha", b}});
    CHECK(tied[0].first == "Alpha");
    CHECK(tied[1].first == "Zeta");

    FitResult no_gamma;
    no_gamma.param_names = {"a0"};
    no_gamma.params = {1.0};
    CHECK_THROWS_AS(rank_by_gamma({{"X", no_gamma}}), std::domain_error);
}

TEST_CASE("fit_param looks up by name") {
    FitResult fit;
    fit.param_names = {"a0", "gamma"};
    fit.params = {3.0, 0.25};
    CHECK(fit_param(fit, "gamma") == 0.25);
    CHECK(fit_param(fit, "a0") == 3.0);
    CHECK_THROWS_AS(fit_param(fit, "sigma"), std::domain_error);
}

}  // TEST_SUITE
