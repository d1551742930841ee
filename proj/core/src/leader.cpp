#include "stackgame/leader.hpp"

#include <cmath>
#include <string>

#include "stackgame/errors.hpp"
#include "stackgame/scalar_opt.hpp"

namespace stackgame {

DesiredPoint desired_point(const TrueSatisfaction& f, const LeaderObjective& obj,
                           const GameParams& params, double tol) {
    // the payoff falls one-for-one in the payment, so v_d = 0 always and only
    // the consumption coordinate needs optimizing
    ScalarMaximum m;
    const auto* poly = std::get_if<SatisfactionPoly>(&f);
    if (poly && poly->coefficients().size() <= 2) {
        double qa = 0.0, qb = 0.0, qc = 0.0;
        if (const auto* dr = std::get_if<DemandResponse>(&obj)) {
            qa = -1.0;
            qb = 2.0 * dr->yref;
            qc = -dr->yref * dr->yref;
        } else {
            qb = -1.0;
        }
        const auto& c = poly->coefficients();
        qb += params.beta * c[0];
        if (c.size() > 1) qa += params.beta * c[1];
        m = maximize_quadratic(qa, qb, qc, 0.0, params.ybar);
        if (!std::isfinite(m.x) || !std::isfinite(m.value))
            throw InvalidScenarioError("company objective overflows");
    } else {
        auto objective = [&](double y) {
            return leader_reward(obj, y) + params.beta * satisfaction_value(f, y);
        };
        auto derivative = [&](double y) {
            return leader_reward_slope(obj, y) +
                   params.beta * satisfaction_slope(f, y);
        };
        m = maximize_scalar(objective, derivative, 0.0, params.ybar, tol,
                            1e-3 * params.ybar);
    }
    bool interior = m.x >= tol && m.x <= params.ybar - tol;
    return {0.0, m.x, interior};
}

IncentiveDesign design_incentive(const SatisfactionPoly& f_hat,
                                 const DesiredPoint& target,
                                 const GameParams& params, double tol) {
    double yd = target.consumption;
    if (!(yd > 0.0 && yd < params.ybar))
        throw BoundaryTargetError("target consumption " + std::to_string(yd) +
                                  " sits on the boundary of [0, " +
                                  std::to_string(params.ybar) + "]");
    double vd = target.payment;
    // xi solves gamma(yd) = vd and p = gamma'(yd) + f_hat'(yd)
    double xi2 = (params.price - f_hat.slope(yd) - vd / yd) / yd;
    double xi1 = vd / yd - xi2 * yd;
    QuadraticIncentive gamma{xi1, xi2};
    auto induced = best_response(gamma, TrueSatisfaction(f_hat), params, tol);
    bool hit = std::abs(induced.y - yd) <= 10.0 * tol;
    return {gamma, induced, hit};
}

}  // namespace stackgame
