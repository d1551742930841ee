#include <doctest.h>

#include <cmath>
#include <limits>

#include "stackgame/errors.hpp"
#include "stackgame/scalar_opt.hpp"

using namespace stackgame;

TEST_CASE("quadratic maximizer clips the stationary point") {
    // -(x-3)^2 + 5 on [0,10]
    auto m = maximize_quadratic(-1.0, 6.0, -4.0, 0.0, 10.0);
    CHECK(m.x == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(m.value == doctest::Approx(5.0).epsilon(1e-15));

    // stationary point below the interval
    m = maximize_quadratic(-1.0, -2.0, 0.0, 0.0, 10.0);
    CHECK(m.x == 0.0);
    // stationary point above the interval
    m = maximize_quadratic(-1.0, 30.0, 0.0, 0.0, 10.0);
    CHECK(m.x == 10.0);
}

TEST_CASE("degenerate quadratics fall back to endpoints") {
    auto m = maximize_quadratic(0.0, 2.0, 1.0, 0.0, 10.0);  // increasing line
    CHECK(m.x == 10.0);
    m = maximize_quadratic(0.0, -2.0, 1.0, 0.0, 10.0);  // decreasing line
    CHECK(m.x == 0.0);
    m = maximize_quadratic(0.0, 0.0, 4.0, 0.0, 10.0);  // constant: smaller end
    CHECK(m.x == 0.0);
    CHECK(m.value == 4.0);
    m = maximize_quadratic(1.0, -10.0, 0.0, 0.0, 10.0);  // convex, symmetric ends
    CHECK(m.x == 0.0);  // ties break low
    m = maximize_quadratic(1.0, -9.0, 0.0, 0.0, 10.0);  // convex, high end wins
    CHECK(m.x == 10.0);
}

TEST_CASE("grid plus golden search locates a smooth maximum") {
    auto obj = [](double x) { return -(x - 3.7) * (x - 3.7); };
    auto m = maximize_scalar(obj, 0.0, 10.0, 1e-9, 0.1);
    CHECK(m.x == doctest::Approx(3.7).epsilon(1e-7));
    CHECK(m.value == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("derivative polish sharpens the argument to machine precision") {
    auto obj = [](double x) { return -(x - 3.7) * (x - 3.7); };
    auto der = [](double x) { return -2 * (x - 3.7); };
    auto m = maximize_scalar(obj, der, 0.0, 10.0, 1e-6, 0.1);
    CHECK(std::abs(m.x - 3.7) < 1e-12);
}

TEST_CASE("global search prefers the best of several local maxima") {
    // two peaks of different height: x=1 (h=2) and x=6 (h=3)
    auto obj = [](double x) {
        double a = std::exp(-8 * (x - 1) * (x - 1)) * 2;
        double b = std::exp(-8 * (x - 6) * (x - 6)) * 3;
        return a + b;
    };
    auto m = maximize_scalar(obj, 0.0, 10.0, 1e-8, 0.05);
    CHECK(m.x == doctest::Approx(6.0).epsilon(1e-4));
}

TEST_CASE("exact ties resolve to the smaller argument") {
    // equal maxima at x = 1 and x = 4
    auto obj = [](double x) { return -(x - 1) * (x - 1) * (x - 4) * (x - 4); };
    auto m = maximize_scalar(obj, 0.0, 5.0, 1e-9, 0.01);
    CHECK(m.x == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("endpoint maxima are found") {
    auto inc = [](double x) { return x; };
    auto m = maximize_scalar(inc, 0.0, 1.0, 1e-9, 0.05);
    CHECK(m.x == doctest::Approx(1.0).epsilon(1e-12));
    auto dec = [](double x) { return -x; };
    m = maximize_scalar(dec, 0.0, 1.0, 1e-9, 0.05);
    CHECK(m.x == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("non-finite objective values are rejected") {
    auto bad = [](double x) {
        return x > 5.0 ? std::numeric_limits<double>::quiet_NaN() : x;
    };
    CHECK_THROWS_AS(maximize_scalar(bad, 0.0, 10.0, 1e-6, 0.5), InvalidScenarioError);
    auto inf = [](double) { return std::numeric_limits<double>::infinity(); };
    CHECK_THROWS_AS(maximize_scalar(inf, 0.0, 1.0, 1e-6, 0.5), InvalidScenarioError);
}
