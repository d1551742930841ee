#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stackgame/estimator.hpp"
#include "stackgame/follower.hpp"
#include "stackgame/leader.hpp"
#include "stackgame/model.hpp"

namespace stackgame {

/// One consumer device: its private satisfaction plus the two incentives the
/// company issues before it has any data to fit.
struct DeviceSpec {
    TrueSatisfaction satisfaction;
    QuadraticIncentive bootstrap0;
    QuadraticIncentive bootstrap1;

    bool operator==(const DeviceSpec&) const = default;
};

/// Complete description of a simulation run. One device means the aggregate
/// game; several mean the separable device-level game.
struct Scenario {
    GameParams params;
    LeaderObjective objective = RevenueDecoupling{};
    std::vector<DeviceSpec> devices;
    int max_iters = 20;      ///< total rounds, counting the two bootstrap rounds
    double epsilon = 0.0;    ///< disaggregation error bound
    std::uint64_t seed = 0;
    double fit_tol = 1e-8;
    double tol = 1e-6;

    /// Throws ConfigError on empty device list, max_iters < 2, epsilon < 0,
    /// nonpositive tolerances, or invalid GameParams.
    void validate() const;

    bool operator==(const Scenario&) const = default;
};

/// Everything that happened to one device in one round. Fields are optional
/// because a terminating round stops partway: a fit with no incentive issued,
/// or a desired point that was never designed around.
struct DeviceRound {
    std::optional<QuadraticIncentive> issued;
    std::optional<double> y_true;            ///< device's actual consumption
    std::optional<double> y_hat;             ///< disaggregated observation fed to the fit
    Boundary boundary = Boundary::interior;  ///< where y_true landed in Y
    std::optional<EstimationResult> fit;     ///< absent in bootstrap rounds
    std::optional<DesiredPoint> desired;
    bool induces_target = true;    ///< design post-check under the estimate
    std::optional<double> leader_value;      ///< true-J_L at (gamma(y_true), y_true)
    /// Coefficientwise |fitted - true| / |true| against a polynomial true
    /// satisfaction, padded with zeros to the longer of the two vectors and
    /// falling back to the absolute error where the true coefficient is 0.
    /// Empty when there is no fit or the true satisfaction is not polynomial.
    std::vector<double> relerr;

    bool operator==(const DeviceRound&) const = default;
};

/// Per-round log entry across all devices.
struct IterationRecord {
    int iter = 0;
    std::vector<DeviceRound> devices;
    std::optional<double> aggregate;  ///< sum of true responses this round

    bool operator==(const IterationRecord&) const = default;
};

/// Why a run stopped.
enum class Termination {
    completed,               ///< max_iters rounds ran
    desired_point_boundary,  ///< a desired consumption hit 0 or ybar
    fit_out_of_range,        ///< no polynomial order within the cap fit the data
};

std::string_view to_string(Termination t);

struct RunResult {
    std::vector<IterationRecord> records;
    Termination termination = Termination::completed;
    int termination_round = -1;   ///< round that triggered the stop, -1 if none
    int termination_device = -1;  ///< device index behind the stop, -1 if none
    std::string detail;           ///< one-line human-readable reason
};

/// Simulated disaggregation: each entry is perturbed by an independent
/// uniform draw from [-epsilon, epsilon] and clipped to [0, ybar]. With
/// epsilon = 0 the input is returned unchanged and the generator is left
/// untouched.
std::vector<double> disaggregate(std::span<const double> true_responses, double epsilon,
                                 double ybar, std::mt19937_64& rng);

/// The aggregate-game loop: issue both bootstraps, then alternate fit ->
/// desired point -> incentive design -> observe until max_iters or a recorded
/// termination condition. Requires exactly one device; the response is
/// observed directly (no disaggregation, epsilon is ignored).
RunResult run_aggregate(const Scenario& scenario);

/// The device-level loop: per round, all devices are issued incentives, their
/// true responses are summed into the aggregate signal and re-split by the
/// epsilon-oracle, and each device's fit/design pipeline runs on its
/// disaggregated series. With epsilon = 0 and one device this reproduces
/// run_aggregate record for record.
RunResult run_device_level(const Scenario& scenario);

}  // namespace stackgame
