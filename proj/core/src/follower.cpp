#include "stackgame/follower.hpp"

#include <cmath>
#include <string>

#include "stackgame/errors.hpp"
#include "stackgame/scalar_opt.hpp"

namespace stackgame {

namespace {

Boundary classify(double y, double ybar, double tol) {
    if (y <= tol) return Boundary::lower;
    if (y >= ybar - tol) return Boundary::upper;
    return Boundary::interior;
}

}  // namespace

BestResponse best_response(const QuadraticIncentive& gamma, const TrueSatisfaction& f,
                           const GameParams& params, double tol) {
    ScalarMaximum m;
    const auto* poly = std::get_if<SatisfactionPoly>(&f);
    if (poly && poly->coefficients().size() <= 2) {
        // total objective is an exact quadratic: clip its stationary point
        const auto& c = poly->coefficients();
        double qb = -params.price + gamma.xi1 + c[0];
        double qa = gamma.xi2 + (c.size() > 1 ? c[1] : 0.0);
        m = maximize_quadratic(qa, qb, 0.0, 0.0, params.ybar);
        if (!std::isfinite(m.x) || !std::isfinite(m.value))
            throw InvalidScenarioError("consumer objective overflows");
    } else {
        auto objective = [&](double y) {
            return follower_objective(gamma, f, params, y);
        };
        auto derivative = [&](double y) {
            return -params.price + gamma.slope(y) + satisfaction_slope(f, y);
        };
        m = maximize_scalar(objective, derivative, 0.0, params.ybar, tol,
                            1e-3 * params.ybar);
    }
    return {m.x, m.value, classify(m.x, params.ybar, tol)};
}

DeviceResponses device_best_responses(std::span<const QuadraticIncentive> gammas,
                                      std::span<const TrueSatisfaction> sats,
                                      const GameParams& params, double tol) {
    if (gammas.size() != sats.size())
        throw ConfigError("incentive count " + std::to_string(gammas.size()) +
                          " does not match device count " +
                          std::to_string(sats.size()));
    DeviceResponses out;
    out.per_device.reserve(gammas.size());
    for (std::size_t d = 0; d < gammas.size(); ++d) {
        out.per_device.push_back(best_response(gammas[d], sats[d], params, tol));
        out.aggregate += out.per_device.back().y;
    }
    return out;
}

}  // namespace stackgame
