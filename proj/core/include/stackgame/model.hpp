#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "stackgame/errors.hpp"

namespace stackgame {

/// Polynomial satisfaction model f(y) = sum_i alpha[i] * y^(i+1).
/// The basis starts at y, so f(0) = 0 for every coefficient vector; there is
/// no constant term because it cannot affect the consumer's optimal response.
class SatisfactionPoly {
public:
    /// Coefficients ordered from the linear term up; must be nonempty.
    explicit SatisfactionPoly(std::vector<double> coefficients);

    double value(double y) const;
    double slope(double y) const;
    double curvature(double y) const;

    const std::vector<double>& coefficients() const { return coeffs_; }
    /// Index of the highest coefficient (the model order j).
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    /// Polynomial degree, i.e. order + 1.
    std::size_t degree() const { return coeffs_.size(); }

    bool operator==(const SatisfactionPoly&) const = default;

private:
    std::vector<double> coeffs_;
};

/// Concave benchmark satisfaction f(y) = scale * ln(y + 1) with scale > 0.
struct LogSatisfaction {
    double scale = 1.0;
    bool operator==(const LogSatisfaction&) const = default;
};

/// The consumer's private satisfaction function.
using TrueSatisfaction = std::variant<LogSatisfaction, SatisfactionPoly>;

double satisfaction_value(const TrueSatisfaction& f, double y);
double satisfaction_slope(const TrueSatisfaction& f, double y);
double satisfaction_curvature(const TrueSatisfaction& f, double y);

/// Quadratic incentive through the origin: gamma(y) = xi1*y + xi2*y^2.
struct QuadraticIncentive {
    double xi1 = 0.0;
    double xi2 = 0.0;

    double value(double y) const { return xi1 * y + xi2 * y * y; }
    double slope(double y) const { return xi1 + 2.0 * xi2 * y; }

    bool operator==(const QuadraticIncentive&) const = default;
};

/// Regulated-market reward g(y) = -y: the company earns by curbing usage.
struct RevenueDecoupling {
    bool operator==(const RevenueDecoupling&) const = default;
};

/// Demand-response reward g(y) = -(y - yref)^2: track a reference signal.
struct DemandResponse {
    double yref = 0.0;
    bool operator==(const DemandResponse&) const = default;
};

using LeaderObjective = std::variant<RevenueDecoupling, DemandResponse>;

double leader_reward(const LeaderObjective& obj, double y);
double leader_reward_slope(const LeaderObjective& obj, double y);

/// Game constants shared by both players. Decision sets are Y = [0, ybar]
/// for consumption and V = [0, vbar] for the incentive payment.
struct GameParams {
    double price = 1.0;  ///< energy price p, known to all
    double ybar = 100.0;
    double vbar = 100.0;
    double beta = 1.0;   ///< weight on consumer satisfaction in the leader's payoff

    /// Throws ConfigError unless price, ybar, vbar > 0 and beta >= 0.
    void validate() const;

    bool operator==(const GameParams&) const = default;
};

/// Consumer payoff J_F = -p*y + gamma(y) + f(y). Requires 0 <= y <= ybar.
double follower_objective(const QuadraticIncentive& gamma, const TrueSatisfaction& f,
                          const GameParams& params, double y);

/// Company payoff J_L = g(y) - v + beta*f(y). Requires v in V and y in Y.
double leader_objective(const LeaderObjective& obj, const TrueSatisfaction& f,
                        const GameParams& params, double v, double y);

}  // namespace stackgame
