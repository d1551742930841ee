#pragma once

#include "stackgame/follower.hpp"
#include "stackgame/model.hpp"

namespace stackgame {

/// Payment/consumption pair the company would most like to see realized.
struct DesiredPoint {
    double payment = 0.0;      ///< v_d; zero for every supported objective
    double consumption = 0.0;  ///< y_d
    bool interior = false;     ///< y_d at least tol away from 0 and ybar

    bool operator==(const DesiredPoint&) const = default;
};

/// Company's preferred operating point: argmax of g(y) - v + beta*f(y) over
/// V x Y. The payoff strictly decreases in v, so the payment is always zero
/// and only consumption needs a scalar search (analytic when f is quadratic).
DesiredPoint desired_point(const TrueSatisfaction& f, const LeaderObjective& obj,
                           const GameParams& params, double tol = kDefaultTol);

/// An incentive aimed at a desired point, together with what the consumer
/// model actually does under it.
struct IncentiveDesign {
    QuadraticIncentive gamma;
    BestResponse induced_response;  ///< best response under the estimate used for design
    bool induces_target = false;    ///< response matched the target within tolerance
};

/// Quadratic incentive that makes (v_d, y_d) the estimated consumer's global
/// optimum: xi1 and xi2 solve gamma(y_d) = v_d and the stationarity condition
/// p = gamma'(y_d) + f_hat'(y_d). The returned flag reports whether the
/// estimated consumer's best response actually lands on y_d (it can fail to
/// when the estimate is too convex for the stationary point to be a global
/// maximum). Throws BoundaryTargetError when the target consumption is 0 or
/// ybar, where the design system degenerates.
IncentiveDesign design_incentive(const SatisfactionPoly& f_hat, const DesiredPoint& target,
                                 const GameParams& params, double tol = kDefaultTol);

}  // namespace stackgame
