#pragma once

#include <span>
#include <vector>

#include "stackgame/model.hpp"

namespace stackgame {

/// Where a best response landed relative to Y = [0, ybar].
enum class Boundary { interior, lower, upper };

/// A consumer's optimal consumption under a given incentive.
struct BestResponse {
    double y = 0.0;
    double value = 0.0;  ///< follower objective at y
    Boundary boundary = Boundary::interior;
};

inline constexpr double kDefaultTol = 1e-6;

/// Follower's rational reaction: argmax over Y of -p*y + gamma(y) + f(y).
///
/// When the total objective is an exact quadratic (polynomial satisfaction of
/// degree <= 2) the stationary point is clipped analytically; otherwise a grid
/// scan with golden-section refinement locates the global maximum to within
/// tol. Among near-equal maxima the smallest y wins.
BestResponse best_response(const QuadraticIncentive& gamma, const TrueSatisfaction& f,
                           const GameParams& params, double tol = kDefaultTol);

/// Responses of a device population to per-device incentives.
struct DeviceResponses {
    std::vector<BestResponse> per_device;
    double aggregate = 0.0;  ///< sum of the individual consumptions
};

/// Each device solves its own decoupled problem; sizes must match.
DeviceResponses device_best_responses(std::span<const QuadraticIncentive> gammas,
                                      std::span<const TrueSatisfaction> sats,
                                      const GameParams& params, double tol = kDefaultTol);

}  // namespace stackgame
