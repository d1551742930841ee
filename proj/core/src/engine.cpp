#include "stackgame/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stackgame {

void Scenario::validate() const {
    params.validate();
    if (devices.empty())
        throw ConfigError("a scenario needs at least one device");
    if (max_iters < 2)
        throw ConfigError("max_iters must cover at least the two bootstrap rounds");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw ConfigError("epsilon must be a nonnegative number");
    if (!(fit_tol > 0.0) || !std::isfinite(fit_tol))
        throw ConfigError("fit_tol must be positive");
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw ConfigError("tol must be positive");
    for (std::size_t d = 0; d < devices.size(); ++d) {
        const auto& dev = devices[d];
        for (double v : {dev.bootstrap0.xi1, dev.bootstrap0.xi2, dev.bootstrap1.xi1,
                         dev.bootstrap1.xi2})
            if (!std::isfinite(v))
                throw ConfigError("device " + std::to_string(d) +
                                  " has a non-finite bootstrap incentive");
        if (const auto* log = std::get_if<LogSatisfaction>(&dev.satisfaction)) {
            if (!(log->scale > 0.0) || !std::isfinite(log->scale))
                throw ConfigError("device " + std::to_string(d) +
                                  " needs a positive log-satisfaction scale");
        } else {
            for (double c :
                 std::get<SatisfactionPoly>(dev.satisfaction).coefficients())
                if (!std::isfinite(c))
                    throw ConfigError("device " + std::to_string(d) +
                                      " has a non-finite satisfaction coefficient");
        }
    }
}

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::completed:
            return "completed";
        case Termination::desired_point_boundary:
            return "desired_point_boundary";
        case Termination::fit_out_of_range:
            return "fit_out_of_range";
    }
    return "unknown";
}

std::vector<double> disaggregate(std::span<const double> true_responses,
                                 double epsilon, double ybar,
                                 std::mt19937_64& rng) {
    std::vector<double> out(true_responses.begin(), true_responses.end());
    if (epsilon == 0.0) return out;
    for (auto& v : out) {
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
        v = std::clamp(v + (2.0 * u - 1.0) * epsilon, 0.0, ybar);
    }
    return out;
}

namespace {

// fit order the residual route works at: the true order when the device's
// satisfaction is polynomial, otherwise as high as the data supports
int residual_fit_order(const TrueSatisfaction& sat, std::size_t n_obs) {
    if (const auto* poly = std::get_if<SatisfactionPoly>(&sat))
        return poly->order();
    int k = static_cast<int>(n_obs) - 1;
    return std::min(std::max(k, 1), 8);
}

std::vector<double> relative_errors(const TrueSatisfaction& truth,
                                    const std::vector<double>& alpha) {
    const auto* poly = std::get_if<SatisfactionPoly>(&truth);
    if (!poly || alpha.empty()) return {};
    const auto& t = poly->coefficients();
    std::vector<double> out(std::max(t.size(), alpha.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        double tv = i < t.size() ? t[i] : 0.0;
        double av = i < alpha.size() ? alpha[i] : 0.0;
        out[i] = tv != 0.0 ? std::abs(av - tv) / std::abs(tv) : std::abs(av - tv);
    }
    return out;
}

bool clear_of_bounds(const ObservationHistory& h, double tol) {
    for (const auto& o : h.observations())
        if (o.y <= tol || o.y >= h.params().ybar - tol) return false;
    return true;
}

RunResult run_loop(const Scenario& s, bool apply_noise) {
    const std::size_t n_dev = s.devices.size();
    std::vector<ObservationHistory> histories;
    histories.reserve(n_dev);
    std::vector<TrueSatisfaction> sats;
    sats.reserve(n_dev);
    for (const auto& dev : s.devices) {
        histories.emplace_back(s.params);
        sats.push_back(dev.satisfaction);
    }
    std::mt19937_64 rng(s.seed);
    const bool noisy = apply_noise && s.epsilon > 0.0;

    RunResult result;
    for (int iter = 0; iter < s.max_iters; ++iter) {
        IterationRecord rec;
        rec.iter = iter;
        rec.devices.resize(n_dev);
        std::vector<QuadraticIncentive> issued(n_dev);
        bool stop = false;

        for (std::size_t d = 0; d < n_dev && !stop; ++d) {
            DeviceRound& round = rec.devices[d];
            if (iter < 2) {
                issued[d] = iter == 0 ? s.devices[d].bootstrap0
                                      : s.devices[d].bootstrap1;
                round.issued = issued[d];
                continue;
            }

            const auto& history = histories[d];
            int fallback_order = residual_fit_order(sats[d], history.size());
            EstimationResult fit;
            if (!noisy) {
                if (clear_of_bounds(history, s.tol)) {
                    fit = minimal_order_fit(history, s.fit_tol);
                    if (!fit.converged) {
                        round.fit = fit;
                        round.relerr = relative_errors(sats[d], fit.alpha);
                        result.termination = Termination::fit_out_of_range;
                        result.termination_round = iter;
                        result.termination_device = static_cast<int>(d);
                        result.detail = "round " + std::to_string(iter) +
                                        ", device " + std::to_string(d) +
                                        ": no order up to the cap explains the "
                                        "history (best relative residual " +
                                        std::to_string(fit.relative_residual) +
                                        ")";
                        stop = true;
                        break;
                    }
                } else {
                    fit = kkt_fit(history, fallback_order);
                }
            } else {
                if (clear_of_bounds(history, s.tol)) {
                    fit = minimal_order_fit(history, std::max(s.fit_tol, s.epsilon));
                    if (!fit.converged) fit = kkt_fit(history, fallback_order);
                } else {
                    fit = kkt_fit(history, fallback_order);
                }
            }
            round.fit = fit;
            round.relerr = relative_errors(sats[d], fit.alpha);

            auto target =
                desired_point(TrueSatisfaction(fit.poly()), s.objective, s.params, s.tol);
            round.desired = target;
            if (!target.interior) {
                result.termination = Termination::desired_point_boundary;
                result.termination_round = iter;
                result.termination_device = static_cast<int>(d);
                result.detail = "round " + std::to_string(iter) + ", device " +
                                std::to_string(d) + ": desired consumption " +
                                std::to_string(target.consumption) +
                                " is not interior to [0, " +
                                std::to_string(s.params.ybar) + "]";
                stop = true;
                break;
            }
            auto design = design_incentive(fit.poly(), target, s.params, s.tol);
            issued[d] = design.gamma;
            round.issued = design.gamma;
            round.induces_target = design.induces_target;
        }

        if (stop) {
            result.records.push_back(std::move(rec));
            return result;
        }

        auto responses = device_best_responses(issued, sats, s.params, s.tol);
        std::vector<double> y_true(n_dev);
        for (std::size_t d = 0; d < n_dev; ++d)
            y_true[d] = responses.per_device[d].y;
        auto y_hat = apply_noise
                         ? disaggregate(y_true, s.epsilon, s.params.ybar, rng)
                         : y_true;
        for (std::size_t d = 0; d < n_dev; ++d) {
            auto& round = rec.devices[d];
            round.y_true = y_true[d];
            round.y_hat = y_hat[d];
            round.boundary = responses.per_device[d].boundary;
            round.leader_value = leader_reward(s.objective, y_true[d]) -
                                 issued[d].value(y_true[d]) +
                                 s.params.beta *
                                     satisfaction_value(sats[d], y_true[d]);
            histories[d].add(issued[d], y_hat[d]);
        }
        rec.aggregate = responses.aggregate;
        result.records.push_back(std::move(rec));
    }
    return result;
}

}  // namespace

RunResult run_aggregate(const Scenario& scenario) {
    scenario.validate();
    if (scenario.devices.size() != 1)
        throw ConfigError("the aggregate game needs exactly one device, got " +
                          std::to_string(scenario.devices.size()));
    return run_loop(scenario, false);
}

RunResult run_device_level(const Scenario& scenario) {
    scenario.validate();
    return run_loop(scenario, true);
}

}  // namespace stackgame
