#include <doctest.h>

#include <cmath>
#include <vector>

#include "expected_values.hpp"
#include "stackgame/follower.hpp"
#include "stackgame/scalar_opt.hpp"

using namespace stackgame;

namespace {
GameParams defaults() {
    GameParams p;
    p.beta = 0.75;
    return p;
}
}  // namespace

TEST_CASE("responses to the two bootstrap incentives under log satisfaction") {
    auto params = defaults();
    TrueSatisfaction f = LogSatisfaction{10.0};
    auto r0 = best_response({10.0, -1.0}, f, params);
    CHECK(r0.y == doctest::Approx(expected::log_y0).epsilon(1e-10));
    CHECK(r0.boundary == Boundary::interior);
    auto r1 = best_response({15.0, -1.0}, f, params);
    CHECK(r1.y == doctest::Approx(expected::log_y1).epsilon(1e-10));
    // objective value is reported at the maximizer
    CHECK(r0.value ==
          doctest::Approx(follower_objective({10.0, -1.0}, f, params, r0.y)));
}

TEST_CASE("response under the round-2 designed incentive") {
    auto params = defaults();
    TrueSatisfaction f = LogSatisfaction{10.0};
    auto r = best_response({expected::log_xi1_2, expected::log_xi2_2}, f, params);
    CHECK(r.y == doctest::Approx(expected::log_ystar).epsilon(1e-10));
}

TEST_CASE("zero satisfaction and no incentive pin the response at zero") {
    GameParams params;
    TrueSatisfaction zero = SatisfactionPoly({0.0});
    auto r = best_response({0.0, 0.0}, zero, params);
    CHECK(r.y == 0.0);
    CHECK(r.boundary == Boundary::lower);
}

TEST_CASE("quadratic satisfaction yields the clipped stationary point") {
    GameParams params;
    TrueSatisfaction f = SatisfactionPoly({2.0, -0.5});
    auto r = best_response({0.0, 0.0}, f, params);  // -1 + 2 - y = 0
    CHECK(r.y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.boundary == Boundary::interior);
}

TEST_CASE("analytic quadratic path agrees with the derivative-free search") {
    auto params = defaults();
    QuadraticIncentive g{1.2, -0.4};
    TrueSatisfaction f = SatisfactionPoly({2.7, -0.3});
    auto analytic = best_response(g, f, params);
    auto searched = maximize_scalar(
        [&](double y) { return follower_objective(g, f, params, y); }, 0.0,
        params.ybar, kDefaultTol, 1e-3 * params.ybar);
    CHECK(analytic.y == doctest::Approx(searched.x).epsilon(1e-6));
}

TEST_CASE("interior responses are stationary") {
    auto params = defaults();
    TrueSatisfaction f = LogSatisfaction{10.0};
    QuadraticIncentive g{10.0, -1.0};
    auto r = best_response(g, f, params);
    const double h = 1e-7;
    double dfd = (follower_objective(g, f, params, r.y + h) -
                  follower_objective(g, f, params, r.y - h)) /
                 (2 * h);
    CHECK(std::abs(dfd) < 10 * kDefaultTol);
}

TEST_CASE("response is monotone in the linear incentive coefficient") {
    auto params = defaults();
    TrueSatisfaction f = LogSatisfaction{10.0};
    double prev = -1.0;
    for (double xi1 : {0.0, 2.0, 5.0, 9.0, 14.0}) {
        auto r = best_response({xi1, -1.0}, f, params);
        CHECK(r.y >= prev);
        prev = r.y;
    }
}

TEST_CASE("a price that dominates the reward clips to zero") {
    GameParams params;
    params.price = 1000.0;
    TrueSatisfaction f = LogSatisfaction{10.0};
    auto r = best_response({0.0, 0.0}, f, params);
    CHECK(r.y == 0.0);
    CHECK(r.boundary == Boundary::lower);
}

TEST_CASE("an unbounded-above objective clips to the upper end") {
    GameParams params;
    TrueSatisfaction f = SatisfactionPoly({2.0, 0.1});  // convex: grows past ybar
    auto r = best_response({0.0, 0.0}, f, params);
    CHECK(r.y == params.ybar);
    CHECK(r.boundary == Boundary::upper);
}

TEST_CASE("overflowing coefficients raise the scenario error") {
    GameParams params;
    TrueSatisfaction f = SatisfactionPoly({1e308, 1e308});
    CHECK_THROWS_AS(best_response({0.0, 0.0}, f, params), InvalidScenarioError);
}

TEST_CASE("device population decouples into per-device problems") {
    auto params = defaults();
    std::vector<QuadraticIncentive> gammas{{1.0, -0.5}, {1.0, -0.5}};
    std::vector<TrueSatisfaction> sats{SatisfactionPoly({2.5, -0.35}),
                                       SatisfactionPoly({2.5, -0.35})};
    auto out = device_best_responses(gammas, sats, params);
    REQUIRE(out.per_device.size() == 2);
    CHECK(out.per_device[0].y == out.per_device[1].y);
    CHECK(out.aggregate == doctest::Approx(2 * out.per_device[0].y).epsilon(1e-15));

    // single device reduces to best_response
    auto single = device_best_responses({gammas.data(), 1}, {sats.data(), 1}, params);
    CHECK(single.per_device[0].y ==
          best_response(gammas[0], sats[0], params).y);

    std::vector<QuadraticIncentive> wrong{{0.0, 0.0}};
    CHECK_THROWS_AS(device_best_responses(wrong, sats, params), ConfigError);
}

TEST_CASE("joint grid maximization matches per-device answers") {
    auto params = defaults();
    std::vector<QuadraticIncentive> gammas{{0.8, -0.4}, {1.6, -0.6}};
    std::vector<TrueSatisfaction> sats{SatisfactionPoly({2.5, -0.35}),
                                       SatisfactionPoly({2.0, -0.15, -0.02})};
    auto out = device_best_responses(gammas, sats, params);

    // brute force over the product grid on a window around the answers
    double best = -1e300, by0 = 0, by1 = 0;
    for (double y0 = 0.0; y0 <= 6.0; y0 += 0.002) {
        double v0 = follower_objective(gammas[0], sats[0], params, y0);
        for (double y1 = 0.0; y1 <= 6.0; y1 += 0.002) {
            double v = v0 + follower_objective(gammas[1], sats[1], params, y1);
            if (v > best) {
                best = v;
                by0 = y0;
                by1 = y1;
            }
        }
    }
    CHECK(out.per_device[0].y == doctest::Approx(by0).epsilon(0.01));
    CHECK(out.per_device[1].y == doctest::Approx(by1).epsilon(0.01));
}
