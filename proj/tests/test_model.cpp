#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "techdiff/model.hpp"
#include "techdiff/reference.hpp"
#include "techdiff/rk4.hpp"
#include "techdiff/rng.hpp"

using namespace techdiff;

namespace {

const FrontierParams germany = reference::germany_frontier;
const CatchUpParams romania{3.25365, 0.148995};

double sup_gap_vs_rk4(const OdeProblem& problem, const std::vector<double>& closed,
                      bool relative) {
    const Trajectory traj = integrate_rk4(problem, 1e-3);
    REQUIRE(traj.values.size() == closed.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < closed.size(); ++i) {
        double gap = std::abs(closed[i] - traj.values[i]);
        if (relative) gap /= std::abs(closed[i]);
        sup = std::max(sup, gap);
    }
    return sup;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("non-adopter share: boundary, frozen value, pure-exponential limit") {
    const AdoptionParams p{0.5, 0.5};
    CHECK(eval_s(p, 0.0) == 1.0);
    CHECK(eval_x(p, 0.0) == 0.0);
    CHECK(eval_s(p, 1.0) == doctest::Approx(0.53788284273999024).epsilon(1e-15));
    CHECK(eval_x(p, 1.0) == doctest::Approx(0.46211715726000976).epsilon(1e-15));
    const AdoptionParams no_herding{0.3, 0.0};
    for (double t : {0.5, 2.0, 7.0}) {
        CHECK(eval_s(no_herding, t) == doctest::Approx(std::exp(-0.3 * t)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(eval_s(p, -1.0), std::domain_error);
    CHECK_THROWS_AS(eval_s({0.0, 0.0}, 1.0), std::domain_error);
    CHECK_THROWS_AS(eval_s({-0.1, 0.5}, 1.0), std::domain_error);
}

TEST_CASE("non-adopter share is strictly decreasing, shares sum to one exactly") {
    std::mt19937_64 engine(11);
    for (int rep = 0; rep < 5; ++rep) {
        const AdoptionParams p{0.05 + uniform_open(engine), uniform_open(engine)};
        double prev = eval_s(p, 0.0);
        for (int i = 1; i <= 120; ++i) {
            const double t = 50.0 * i / 120.0;
            const double s = eval_s(p, t);
            CHECK(s < prev);
            CHECK(eval_s(p, t) + eval_x(p, t) == 1.0);
            prev = s;
        }
    }
}

TEST_CASE("fixed-frontier path: boundaries, frozen value, domain") {
    const FixedFrontierParams p{1.0, 2.0, 0.05};
    CHECK(eval_a_fixed(p, 0.0) == 1.0);
    CHECK(eval_a_fixed(p, 10.0) == doctest::Approx(1.4621171572600098).epsilon(1e-15));
    const FixedFrontierParams saturated{2.0, 2.0, 0.3};
    for (double t : {0.0, 5.0, 40.0}) CHECK(eval_a_fixed(saturated, t) == 2.0);
    CHECK_THROWS_AS(eval_a_fixed({3.0, 2.0, 0.1}, 1.0), std::domain_error);
    CHECK_THROWS_AS(eval_a_fixed({1.0, 2.0, 0.0}, 1.0), std::domain_error);
    CHECK_THROWS_AS(eval_a_fixed(p, -0.5), std::domain_error);
}

TEST_CASE("fixed-frontier family is ordered by herding strength") {
    // Strong herding late in the window saturates to the ceiling within
    // double precision, so strict ordering only holds below it.
    for (double t : {2.0, 10.0, 50.0}) {
        double prev = 1.0;
        bool saturated = false;
        for (int i = 0; i <= 10; ++i) {
            const double h = 0.05 * std::pow(2.0, i / 2.0);
            const double a = eval_a_fixed({1.0, 2.0, h}, t);
            CHECK(a > 1.0);
            CHECK(a <= 2.0);
            if (a < 2.0) {
                CHECK_FALSE(saturated);
                CHECK(a > prev);
            } else {
                saturated = true;
            }
            prev = a;
        }
    }
}

TEST_CASE("frontier path: boundary, frozen value, constant when flat") {
    CHECK(eval_frontier(germany, 0.0) == germany.a_m0);
    CHECK(eval_frontier(germany, 35.0) == doctest::Approx(109.0737930361265).epsilon(1e-14));
    CHECK(eval_frontier({5.0, 0.0}, 123.0) == 5.0);
    CHECK_THROWS_AS(eval_frontier({0.0, 0.1}, 1.0), std::domain_error);
}

TEST_CASE("moving-frontier path: boundary, frozen value, degenerate limit branch") {
    CHECK(eval_a_moving(germany, romania, 0.0) == romania.a0);
    CHECK(eval_a_moving(germany, {5.0, 0.12}, 20.0) ==
          doctest::Approx(26.795310394646240).epsilon(1e-14));

    const CatchUpParams nearly{3.25365, germany.gamma_m + 1e-10};
    const CatchUpParams exactly{3.25365, germany.gamma_m};
    for (double t : {5.0, 35.0, 55.0}) {
        const double general = eval_a_moving(germany, nearly, t);
        const double limit = eval_a_moving(germany, exactly, t);
        CHECK(std::abs(general - limit) / limit < 1e-6);
    }
    CHECK_THROWS_AS(eval_a_moving(germany, {0.0, 0.1}, 1.0), std::domain_error);
    CHECK_THROWS_AS(eval_a_moving(germany, {5.0, -0.1}, 1.0), std::domain_error);
    CHECK_THROWS_AS(eval_a_moving(germany, romania, -1.0), std::domain_error);
}

TEST_CASE("gap growth rate: frozen value and behavior at the two ends") {
    CHECK(growth_rate_moving(germany, romania, 35.0) ==
          doctest::Approx(0.049556070477529733).epsilon(1e-13));
    const double early = growth_rate_moving(germany, romania, 0.0);
    CHECK(early == doctest::Approx(romania.gamma * (1.0 - romania.a0 / germany.a_m0)));
    const double late = growth_rate_moving(germany, romania, 2000.0);
    CHECK(late == doctest::Approx(germany.gamma_m).epsilon(1e-6));

    // starting on the frontier closes the gap bracket
    CHECK(growth_rate_moving(germany, {germany.a_m0, germany.gamma_m}, 0.0) == 0.0);
    // far below the frontier the rate is the full gamma
    const double far = growth_rate_moving(germany, {1e-9 * germany.a_m0, 0.12}, 0.0);
    CHECK(std::abs(far - 0.12) / 0.12 < 1e-6);
}

TEST_CASE("asymptotic frontier ratio: frozen value and agreement with the path limit") {
    const double ratio = asymptotic_frontier_ratio(romania.gamma, germany.gamma_m);
    CHECK(ratio == doctest::Approx(0.74411154736736132).epsilon(1e-15));
    CHECK(asymptotic_frontier_ratio(0.08, 0.04) == 0.5);
    CHECK(std::abs(asymptotic_frontier_ratio(1e6, 0.04) - 1.0) < 1e-6);
    for (double gamma : {germany.gamma_m + 0.011, 0.09, 0.148995}) {
        const CatchUpParams c{3.25365, gamma};
        const double path_ratio =
            eval_a_moving(germany, c, 2000.0) / eval_frontier(germany, 2000.0);
        CHECK(std::abs(path_ratio - asymptotic_frontier_ratio(gamma, germany.gamma_m)) < 1e-3);
    }
    CHECK_THROWS_AS(asymptotic_frontier_ratio(0.03, 0.03), std::domain_error);
    CHECK_THROWS_AS(asymptotic_frontier_ratio(0.1, 0.0), std::domain_error);
}

TEST_CASE("pre-diffusion growth is exponential in the innovator pool") {
    const KremerParams k{2.0, 0.02, 5.0};
    CHECK(kremer_tfp(k, 0.0) == 2.0);
    CHECK(kremer_tfp(k, 7.0) == doctest::Approx(4.0275054149409530).epsilon(1e-15));
    CHECK(kremer_tfp({1.0, 0.01, 10.0}, 10.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(kremer_tfp({0.0, 0.02, 5.0}, 1.0), std::domain_error);
}

TEST_CASE("adoption rate field: frozen value, rest states, slope cross-check") {
    CHECK(rhs_adoption({0.5, 0.5}, 0.5) == 0.375);
    CHECK(rhs_adoption({0.5, 0.5}, 1.0) == 0.0);
    CHECK(rhs_adoption({0.0, 0.7}, 0.0) == 0.0);
    CHECK_THROWS_AS(rhs_adoption({0.5, 0.5}, 1.5), std::domain_error);

    const AdoptionParams p{0.2, 0.6};
    const double t = 1.5;
    const double eps = 1e-6;
    const double slope = (eval_x(p, t + eps) - eval_x(p, t - eps)) / (2.0 * eps);
    CHECK(rhs_adoption(p, eval_x(p, t)) == doctest::Approx(slope).epsilon(1e-8));
}

TEST_CASE("catch-up rate field: frozen value, carrying capacity, slope cross-check") {
    CHECK(rhs_logistic_moving(germany, 0.12, 5.0, 0.0) ==
          doctest::Approx(0.49554499399383715).epsilon(1e-15));
    const double cap = eval_frontier(germany, 12.0);
    CHECK(rhs_logistic_moving(germany, 0.12, cap, 12.0) == 0.0);
    CHECK(rhs_logistic_moving(germany, 0.0, 5.0, 3.0) == 0.0);

    const double t = 8.0;
    const double eps = 1e-5;
    const double slope =
        (eval_a_moving(germany, romania, t + eps) - eval_a_moving(germany, romania, t - eps)) /
        (2.0 * eps);
    const double field = rhs_logistic_moving(germany, romania.gamma,
                                             eval_a_moving(germany, romania, t), t);
    CHECK(field == doctest::Approx(slope).epsilon(1e-8));
}

TEST_CASE("closed-form adoption share tracks its ODE within 1e-6") {
    std::mt19937_64 engine(21);
    for (int rep = 0; rep < 20; ++rep) {
        const AdoptionParams p{uniform_open(engine), uniform_open(engine)};
        OdeProblem problem;
        problem.rhs = [p](double, double x) { return rhs_adoption(p, std::clamp(x, 0.0, 1.0)); };
        problem.y0 = 0.0;
        problem.t_start = 0.0;
        problem.t_end = 50.0;
        const Trajectory traj = integrate_rk4(problem, 1e-3);
        std::vector<double> closed(traj.times.size());
        for (std::size_t i = 0; i < traj.times.size(); ++i) closed[i] = eval_x(p, traj.times[i]);
        CHECK(sup_gap_vs_rk4(problem, closed, false) < 1e-6);
    }
}

TEST_CASE("closed-form catch-up path tracks its ODE within 1e-6 relative") {
    std::mt19937_64 engine(22);
    for (int rep = 0; rep < 20; ++rep) {
        const FrontierParams f{1.0 + 49.0 * uniform_open(engine),
                               0.01 + 0.04 * uniform_open(engine)};
        const CatchUpParams c{f.a_m0 * (0.05 + 0.9 * uniform_open(engine)),
                              f.gamma_m + 0.02 + 0.13 * uniform_open(engine)};
        OdeProblem problem;
        problem.rhs = [f, c](double t, double a) { return rhs_logistic_moving(f, c.gamma, a, t); };
        problem.y0 = c.a0;
        problem.t_start = 0.0;
        problem.t_end = 55.0;
        const Trajectory traj = integrate_rk4(problem, 1e-3);
        std::vector<double> closed(traj.times.size());
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            closed[i] = eval_a_moving(f, c, traj.times[i]);
        }
        CHECK(sup_gap_vs_rk4(problem, closed, true) < 1e-6);
    }
}

}
