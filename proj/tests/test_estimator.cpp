#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "expected_values.hpp"
#include "stackgame/estimator.hpp"
#include "stackgame/follower.hpp"

using namespace stackgame;

namespace {
ObservationHistory bootstrap_history() {
    GameParams p;
    p.beta = 0.75;
    ObservationHistory h(p);
    h.add({10.0, -1.0}, expected::log_y0);
    h.add({15.0, -1.0}, expected::log_y1);
    return h;
}
}  // namespace

TEST_CASE("history validates the response domain") {
    ObservationHistory h(GameParams{});
    CHECK_THROWS_AS(h.add({0, 0}, -0.1), InvalidScenarioError);
    CHECK_THROWS_AS(h.add({0, 0}, 100.1), InvalidScenarioError);
    h.add({0, 0}, 0.0);
    h.add({1, 0}, 50.0);
    CHECK(h.size() == 2);
    CHECK_FALSE(h.all_interior());
    ObservationHistory h2(GameParams{});
    h2.add({0, 0}, 50.0);
    CHECK(h2.all_interior());
}

TEST_CASE("stationarity right-hand side p - xi1 - 2*xi2*y") {
    ObservationHistory h(GameParams{});
    h.add({10.0, -1.0}, 5.29);
    h.add({15.0, -1.0}, 7.58);
    h.add({0.0, 0.0}, 3.33);
    auto b = build_rhs(h);
    REQUIRE(b.size() == 3);
    CHECK(b[0] == doctest::Approx(expected::rhs_example_0).epsilon(1e-14));
    CHECK(b[1] == doctest::Approx(expected::rhs_example_1).epsilon(1e-14));
    CHECK(b[2] == doctest::Approx(1.0).epsilon(1e-14));  // zero incentive gives p
}

TEST_CASE("design matrix rows are the derivative basis at each response") {
    ObservationHistory h(GameParams{});
    h.add({10.0, -1.0}, 5.29);
    h.add({15.0, -1.0}, 7.58);
    auto Y = build_design_matrix(h, 1);
    REQUIRE(Y.rows() == 2);
    REQUIRE(Y.cols() == 2);
    CHECK(Y(0, 0) == 1.0);
    CHECK(Y(0, 1) == doctest::Approx(10.58).epsilon(1e-14));
    CHECK(Y(1, 1) == doctest::Approx(15.16).epsilon(1e-14));

    ObservationHistory hz(GameParams{});
    hz.add({0, 0}, 0.0);
    auto Yz = build_design_matrix(hz, 3);
    CHECK(Yz(0, 0) == 1.0);
    for (int j = 1; j < 4; ++j) CHECK(Yz(0, j) == 0.0);

    ObservationHistory hd(GameParams{});
    hd.add({0, 0}, 4.0);
    hd.add({1, 0}, 4.0);
    auto Yd = build_design_matrix(hd, 1);
    CHECK(Yd.row(0) == Yd.row(1));  // duplicate responses collapse the rank
}

TEST_CASE("two bootstrap observations fit the quadratic estimate") {
    auto fit = minimal_order_fit(bootstrap_history(), 1e-8);
    CHECK(fit.converged);
    CHECK(fit.order == 1);
    CHECK(fit.method == FitMethod::range_test);
    REQUIRE(fit.alpha.size() == 2);
    CHECK(fit.alpha[0] == doctest::Approx(expected::log_alpha0).epsilon(1e-10));
    CHECK(fit.alpha[1] == doctest::Approx(expected::log_alpha1).epsilon(1e-10));
    CHECK(fit.relative_residual <= 1e-8);
    CHECK_FALSE(fit.rank_deficient);
}

TEST_CASE("histories generated by the consumer oracle recover the truth") {
    GameParams p;
    p.beta = 0.75;
    TrueSatisfaction truth = SatisfactionPoly({3.0, -0.2});
    ObservationHistory h(p);
    for (auto g : {QuadraticIncentive{0.5, -0.3}, QuadraticIncentive{1.0, -0.3}}) {
        h.add(g, best_response(g, truth, p).y);
    }
    auto fit = minimal_order_fit(h, 1e-8);
    CHECK(fit.converged);
    CHECK(fit.alpha[0] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fit.alpha[1] == doctest::Approx(-0.2).epsilon(1e-9));
}

TEST_CASE("the lowest passing order wins even when more data is available") {
    GameParams p;
    TrueSatisfaction truth = SatisfactionPoly({3.0, -0.2});
    ObservationHistory h(p);
    for (double xi1 : {0.5, 1.0, 1.5, 2.0}) {
        QuadraticIncentive g{xi1, -0.3};
        h.add(g, best_response(g, truth, p).y);
    }
    auto fit = minimal_order_fit(h, 1e-8);
    CHECK(fit.order == 1);  // four collinear stationarity points
    CHECK(fit.converged);
}

TEST_CASE("single observation resolves to the minimum-norm coefficients") {
    GameParams p;
    ObservationHistory h(p);
    h.add({0.0, 0.0}, 2.0);  // b = 1, row [1, 4]
    auto fit = minimal_order_fit(h, 1e-8);
    CHECK(fit.converged);
    CHECK(fit.rank == 1);
    CHECK(fit.rank_deficient);
    CHECK(fit.alpha[0] == doctest::Approx(1.0 / 17.0).epsilon(1e-12));
    CHECK(fit.alpha[1] == doctest::Approx(4.0 / 17.0).epsilon(1e-12));
}

TEST_CASE("boundary responses are rejected by the range-test route") {
    GameParams p;
    ObservationHistory h(p);
    h.add({0, 0}, 0.0);
    h.add({1, 0}, 3.0);
    CHECK_THROWS_AS(minimal_order_fit(h, 1e-8), NonInteriorHistoryError);
    ObservationHistory empty(p);
    CHECK_THROWS_AS(minimal_order_fit(empty, 1e-8), InvalidScenarioError);
}

TEST_CASE("an inconsistent system is returned unconverged with its best fit") {
    GameParams p;
    ObservationHistory h(p);
    // three stationarity points that no line explains
    h.add({0.0, 0.0}, 1.0);
    h.add({0.5, 0.0}, 2.0);
    h.add({0.0, -0.1}, 3.0);
    auto fit = minimal_order_fit(h, 1e-8, /*max_order=*/1);
    CHECK_FALSE(fit.converged);
    CHECK(fit.order == 1);
    CHECK(fit.relative_residual > 1e-8);
}

TEST_CASE("kkt route reproduces an exact interior fit with zero multipliers") {
    auto h = bootstrap_history();
    auto range = minimal_order_fit(h, 1e-8);
    auto kkt = kkt_fit(h, 1);
    CHECK(kkt.method == FitMethod::kkt_residual);
    CHECK(kkt.converged);
    CHECK(kkt.residual <= 1e-10);
    REQUIRE(kkt.alpha.size() == 2);
    CHECK(std::abs(kkt.alpha[0] - range.alpha[0]) < 1e-5);
    CHECK(std::abs(kkt.alpha[1] - range.alpha[1]) < 1e-5);
    double lnorm = 0;
    for (auto& l : kkt.lambdas) lnorm += l[0] * l[0] + l[1] * l[1];
    CHECK(std::sqrt(lnorm) <= 1e-6);
    CHECK(kkt.r_ineq_max == 0.0);  // responses inside Y leave no feasibility gap
}

TEST_CASE("kkt route handles a response pinned at zero") {
    GameParams p;
    ObservationHistory h(p);
    h.add({0.0, 0.0}, 0.0);  // stationarity -1 + alpha0 - lambda1 = 0
    auto kkt = kkt_fit(h, 1);
    CHECK(kkt.residual <= 1e-10);
    for (auto& l : kkt.lambdas) {
        CHECK(l[0] >= 0.0);
        CHECK(l[1] >= 0.0);
    }
}

TEST_CASE("kkt objective decreases monotonically") {
    auto h = bootstrap_history();
    KktSolverConfig cfg;
    cfg.record_objective_trace = true;
    auto kkt = kkt_fit(h, 1, CoefficientBox::unbounded(), cfg);
    REQUIRE(kkt.objective_trace.size() > 1);
    for (std::size_t i = 1; i < kkt.objective_trace.size(); ++i) {
        CHECK(kkt.objective_trace[i] <= kkt.objective_trace[i - 1] + 1e-15);
    }
}

TEST_CASE("kkt reaches the grid-oracle optimum when no exact fit exists") {
    GameParams p;
    ObservationHistory h(p);
    h.add({0.0, 0.0}, 1.0);   // b = 1
    h.add({0.5, 0.0}, 2.0);   // b = 0.5
    h.add({0.0, -0.1}, 3.0);  // b = 1.6
    const double ys[] = {1.0, 2.0, 3.0};
    const double bs[] = {1.0, 0.5, 1.6};

    // For fixed coefficients the best multipliers solve per record
    //   min_{l>=0} (s - l)^2 + (l*y)^2      (s > 0, lower-bound side)
    // and symmetrically on the upper side, shrinking positive residuals at a
    // small complementarity cost. Scan the coefficients over a fine grid with
    // that inner solve to get an implementation-independent optimum.
    auto inner = [&](double a0, double a1) {
        double phi = 0;
        for (int i = 0; i < 3; ++i) {
            double s = a0 + 2 * a1 * ys[i] - bs[i];
            double w;
            if (s > 0) {
                w = ys[i] * ys[i] / (1 + ys[i] * ys[i]);
            } else {
                double d = ys[i] - p.ybar;
                w = d * d / (1 + d * d);
            }
            phi += w * s * s;
        }
        return phi;
    };
    double best = 1e300;
    for (double a0 = -0.5; a0 <= 1.5; a0 += 1e-3) {
        for (double a1 = -0.5; a1 <= 0.7; a1 += 1e-3) {
            best = std::min(best, inner(a0, a1));
        }
    }

    // least-squares misfit with lambda pinned to zero, for comparison:
    // alpha = (13/30, 3/20), residuals (4/15, -8/15, 4/15)
    const double phi_ls = (4.0 / 15) * (4.0 / 15) + (8.0 / 15) * (8.0 / 15) +
                          (4.0 / 15) * (4.0 / 15);

    auto kkt = kkt_fit(h, 1);
    CHECK(kkt.residual <= phi_ls);           // coupling can only help
    CHECK(kkt.residual <= best + 1e-5);      // attains the scanned optimum
    CHECK(kkt.residual >= best - 1e-5);
    for (auto& l : kkt.lambdas) {
        CHECK(l[0] >= 0.0);
        CHECK(l[1] >= 0.0);
    }
}

TEST_CASE("coefficient box constraints are honored") {
    auto h = bootstrap_history();
    CoefficientBox box;
    box.lower = {0.0, 0.0};  // the exact fit needs alpha1 < 0
    auto kkt = kkt_fit(h, 1, box);
    CHECK(kkt.alpha[1] >= 0.0);
    CHECK(kkt.residual > 1e-10);  // constrained optimum cannot be exact
}

TEST_CASE("randomized exact histories recover at the true order") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> a0(2.0, 3.2), a1(-0.5, -0.25);
    GameParams p;
    p.beta = 0.75;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> truth{a0(rng), a1(rng)};
        TrueSatisfaction f = SatisfactionPoly(truth);
        ObservationHistory h(p);
        for (auto g : {QuadraticIncentive{0.5, -0.4}, QuadraticIncentive{1.7, -0.4}}) {
            h.add(g, best_response(g, f, p).y);
        }
        auto fit = minimal_order_fit(h, 1e-8);
        REQUIRE(fit.converged);
        CHECK(std::abs(fit.alpha[0] - truth[0]) < 1e-8);
        CHECK(std::abs(fit.alpha[1] - truth[1]) < 1e-8);
    }
}
