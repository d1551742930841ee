#include "stackgame/model.hpp"

#include <cmath>
#include <string>

namespace stackgame {

SatisfactionPoly::SatisfactionPoly(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) {
        throw ConfigError("satisfaction polynomial needs at least one coefficient");
    }
}

double SatisfactionPoly::value(double y) const {
    // Horner on y * (a0 + a1*y + ...)
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * y + *it;
    }
    return y * acc;
}

double SatisfactionPoly::slope(double y) const {
    double acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        acc = acc * y + static_cast<double>(i + 1) * coeffs_[i];
    }
    return acc;
}

double SatisfactionPoly::curvature(double y) const {
    double acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 1;) {
        acc = acc * y + static_cast<double>((i + 1) * i) * coeffs_[i];
    }
    return acc;
}

double satisfaction_value(const TrueSatisfaction& f, double y) {
    return std::visit(
        [y](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LogSatisfaction>) {
                return v.scale * std::log1p(y);
            } else {
                return v.value(y);
            }
        },
        f);
}

double satisfaction_slope(const TrueSatisfaction& f, double y) {
    return std::visit(
        [y](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LogSatisfaction>) {
                return v.scale / (y + 1.0);
            } else {
                return v.slope(y);
            }
        },
        f);
}

double satisfaction_curvature(const TrueSatisfaction& f, double y) {
    return std::visit(
        [y](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LogSatisfaction>) {
                return -v.scale / ((y + 1.0) * (y + 1.0));
            } else {
                return v.curvature(y);
            }
        },
        f);
}

double leader_reward(const LeaderObjective& obj, double y) {
    return std::visit(
        [y](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, RevenueDecoupling>) {
                return -y;
            } else {
                const double d = y - v.yref;
                return -d * d;
            }
        },
        obj);
}

double leader_reward_slope(const LeaderObjective& obj, double y) {
    return std::visit(
        [y](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, RevenueDecoupling>) {
                return -1.0;
            } else {
                return -2.0 * (y - v.yref);
            }
        },
        obj);
}

void GameParams::validate() const {
    if (!(price > 0.0)) throw ConfigError("price must be positive");
    if (!(ybar > 0.0)) throw ConfigError("ybar must be positive");
    if (!(vbar > 0.0)) throw ConfigError("vbar must be positive");
    if (!(beta >= 0.0)) throw ConfigError("beta must be nonnegative");
}

double follower_objective(const QuadraticIncentive& gamma, const TrueSatisfaction& f,
                          const GameParams& params, double y) {
    if (y < 0.0 || y > params.ybar) {
        throw std::domain_error("follower_objective: y outside [0, ybar]");
    }
    return -params.price * y + gamma.value(y) + satisfaction_value(f, y);
}

double leader_objective(const LeaderObjective& obj, const TrueSatisfaction& f,
                        const GameParams& params, double v, double y) {
    if (v < 0.0 || v > params.vbar) {
        throw std::domain_error("leader_objective: v outside [0, vbar]");
    }
    if (y < 0.0 || y > params.ybar) {
        throw std::domain_error("leader_objective: y outside [0, ybar]");
    }
    return leader_reward(obj, y) - v + params.beta * satisfaction_value(f, y);
}

}  // namespace stackgame
