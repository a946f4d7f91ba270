#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "techdiff/model.hpp"
#include "techdiff/reference.hpp"
#include "techdiff/rk4.hpp"

using namespace techdiff;

namespace {

OdeProblem exponential_problem() {
    OdeProblem p;
    p.rhs = [](double, double y) { return y; };
    p.y0 = 1.0;
    p.t_start = 0.0;
    p.t_end = 1.0;
    return p;
}

}  // namespace

TEST_SUITE("rk4") {

TEST_CASE("zero field gives a constant trajectory on an exact grid") {
    OdeProblem p;
    p.rhs = [](double, double) { return 0.0; };
    p.y0 = 3.0;
    p.t_start = 0.0;
    p.t_end = 10.0;
    const Trajectory traj = integrate_rk4(p, 0.1);
    CHECK(traj.times.size() == 101);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == 10.0);
    for (double v : traj.values) CHECK(v == 3.0);
    for (std::size_t i = 1; i < traj.times.size(); ++i) CHECK(traj.times[i] > traj.times[i - 1]);
}

TEST_CASE("exponential growth reaches e within 1e-9") {
    const Trajectory traj = integrate_rk4(exponential_problem(), 0.01);
    CHECK(traj.times.back() == 1.0);
    CHECK(std::abs(traj.values.back() - std::exp(1.0)) < 1e-9);
}

TEST_CASE("adoption field reproduces the closed form at t = 1") {
    const AdoptionParams ap{0.5, 0.5};
    OdeProblem p;
    p.rhs = [ap](double, double x) { return rhs_adoption(ap, std::clamp(x, 0.0, 1.0)); };
    p.y0 = 0.0;
    p.t_end = 1.0;
    const Trajectory traj = integrate_rk4(p, 1e-3);
    CHECK(std::abs(traj.values.back() - 0.46211715726000976) < 1e-8);
}

TEST_CASE("final partial step lands exactly on t_end") {
    OdeProblem p = exponential_problem();
    p.t_end = 0.95;
    const Trajectory traj = integrate_rk4(p, 0.1);
    CHECK(traj.times.back() == 0.95);
    CHECK(traj.times.size() == 11);
    CHECK(std::abs(traj.values.back() - std::exp(0.95)) < 1e-5);

    p.t_end = 0.37;
    const Trajectory wide = integrate_rk4(p, 1.0);
    CHECK(wide.times.size() == 2);
    CHECK(wide.times.back() == 0.37);
}

TEST_CASE("degenerate span yields the single starting point") {
    OdeProblem p = exponential_problem();
    p.t_end = p.t_start;
    const Trajectory traj = integrate_rk4(p, 0.1);
    CHECK(traj.times.size() == 1);
    CHECK(traj.values.front() == 1.0);
}

TEST_CASE("invalid problems are rejected") {
    OdeProblem p = exponential_problem();
    CHECK_THROWS_AS(integrate_rk4(p, 0.0), std::domain_error);
    CHECK_THROWS_AS(integrate_rk4(p, -0.1), std::domain_error);
    p.t_end = -1.0;
    CHECK_THROWS_AS(integrate_rk4(p, 0.1), std::domain_error);
    OdeProblem blowup;
    blowup.rhs = [](double, double y) { return y * y; };
    blowup.y0 = 1.0;
    blowup.t_end = 2.0;
    CHECK_THROWS_AS(integrate_rk4(blowup, 0.1), std::runtime_error);
}

TEST_CASE("richardson estimate vanishes for fields RK4 integrates exactly") {
    OdeProblem p;
    p.rhs = [](double, double) { return 2.5; };
    p.y0 = 0.0;
    p.t_end = 10.0;
    CHECK(richardson_error_estimate(p, 0.1) < 1e-13);
}

TEST_CASE("richardson estimate halves like an order-4 method") {
    const OdeProblem p = exponential_problem();
    const double ratio = richardson_error_estimate(p, 0.1) / richardson_error_estimate(p, 0.05);
    CHECK(ratio > 16.0 / 1.5);
    CHECK(ratio < 16.0 * 1.5);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("richardson estimate is tiny for the fitted catch-up field") {
    const FrontierParams f = reference::germany_frontier;
    OdeProblem p;
    p.rhs = [f](double t, double a) { return rhs_logistic_moving(f, 0.148995, a, t); };
    p.y0 = 3.25365;
    p.t_end = 55.0;
    CHECK(richardson_error_estimate(p, 0.01) < 1e-8);
}

TEST_CASE("identical inputs produce identical trajectories") {
    const OdeProblem p = exponential_problem();
    const Trajectory a = integrate_rk4(p, 0.013);
    const Trajectory b = integrate_rk4(p, 0.013);
    REQUIRE(a.times.size() == b.times.size());
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        CHECK(a.times[i] == b.times[i]);
        CHECK(a.values[i] == b.values[i]);
    }
}

}
