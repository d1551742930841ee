#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "stackgame/model.hpp"

namespace stackgame {

/// One round of evidence for the estimator: the incentive the company issued
/// and the consumption it observed in return.
struct Observation {
    double xi1 = 0.0;
    double xi2 = 0.0;
    double y = 0.0;
};

/// Ordered list of (incentive, response) pairs for one consumer, tied to the
/// game constants they were generated under.
class ObservationHistory {
public:
    explicit ObservationHistory(GameParams params);

    /// Appends a round; throws InvalidScenarioError if y falls outside Y.
    void add(const QuadraticIncentive& gamma, double y);
    void add(const Observation& obs);

    const std::vector<Observation>& observations() const { return obs_; }
    const GameParams& params() const { return params_; }
    std::size_t size() const { return obs_.size(); }
    bool empty() const { return obs_.empty(); }

    /// True when every recorded response lies strictly inside (0, ybar).
    bool all_interior() const;

private:
    GameParams params_;
    std::vector<Observation> obs_;
};

/// Which route produced an estimate.
enum class FitMethod { range_test, kkt_residual };

/// Outcome of a satisfaction fit. alpha holds the model coefficients from the
/// linear term up (same basis as SatisfactionPoly).
struct EstimationResult {
    std::vector<double> alpha;
    int order = 0;                     ///< highest coefficient index j
    FitMethod method = FitMethod::range_test;
    double residual = 0.0;             ///< ||Y*alpha - b|| for the range test, phi for KKT
    double relative_residual = 0.0;    ///< residual / max(||b||, 1)
    bool converged = false;
    Eigen::Index rank = 0;             ///< numerical rank of the design matrix
    bool rank_deficient = false;

    // KKT route extras; empty for the range test.
    std::vector<std::array<double, 2>> lambdas;  ///< per-record multipliers (lower, upper)
    double r_ineq_max = 0.0;           ///< worst primal-feasibility violation, diagnostic only
    std::vector<double> objective_trace;

    SatisfactionPoly poly() const { return SatisfactionPoly(alpha); }

    bool operator==(const EstimationResult&) const = default;
};

/// Stationarity right-hand side b_i = p - xi1_i - 2*xi2_i*y_i, one entry per
/// observation.
Eigen::VectorXd build_rhs(const ObservationHistory& history);

/// Design matrix with rows [1, 2*y_i, 3*y_i^2, ..., (order+1)*y_i^order];
/// column k holds the derivative basis d/dy y^(k+1) evaluated at y_i.
Eigen::MatrixXd build_design_matrix(const ObservationHistory& history, int order);

/// Smallest-order polynomial consistent with an interior history.
///
/// Tries orders j = 1, 2, ... and accepts the first whose least-squares
/// relative residual falls within fit_tol; the minimum-norm solution is kept
/// when the design matrix is rank deficient. Fails (converged = false, with
/// the best order found) when even max_order misses the tolerance. Throws
/// NonInteriorHistoryError if any response sits on the boundary of Y and
/// InvalidScenarioError on an empty history.
EstimationResult minimal_order_fit(const ObservationHistory& history, double fit_tol,
                                   int max_order = 8);

/// Optional elementwise bounds for the KKT fit's coefficient search.
struct CoefficientBox {
    std::vector<double> lower;  ///< empty means unbounded below
    std::vector<double> upper;  ///< empty means unbounded above

    static CoefficientBox unbounded() { return {}; }
};

/// Knobs for the projected-gradient KKT solver.
struct KktSolverConfig {
    int max_iters = 200000;
    /// Stop once a step's objective drop falls below this fraction of the
    /// objective, or when backtracking finds no descent step at all.
    double decrease_tol = 1e-12;
    double armijo = 1e-4;
    double backtrack = 0.5;
    double step_growth = 2.0;
    double initial_step = 0.0;     ///< 0 picks a scale from the first gradient
    /// Every few iterations the line search starts from a long trial step, so
    /// multipliers pinned by the projection land exactly on the boundary
    /// instead of decaying toward it. 0 disables the long trials.
    int sweep_interval = 8;
    bool record_objective_trace = false;
};

/// Stationarity-residual fit usable on boundary histories.
///
/// Minimizes the summed squared residuals of each observation's first-order
/// conditions over the coefficients and per-record multipliers (lower, upper),
/// by projected gradient descent with backtracking from the zero start. The
/// multipliers stay nonnegative and alpha stays inside box. The model order is
/// fixed by the caller. converged reports whether the objective decrease
/// criterion was met within the iteration budget.
EstimationResult kkt_fit(const ObservationHistory& history, int order,
                         const CoefficientBox& box = CoefficientBox::unbounded(),
                         const KktSolverConfig& cfg = {});

}  // namespace stackgame
