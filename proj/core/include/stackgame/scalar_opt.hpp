#pragma once

#include <functional>

namespace stackgame {

/// Location/value pair returned by the scalar maximizers.
struct ScalarMaximum {
    double x = 0.0;
    double value = 0.0;
};

/// Global maximizer of a continuous objective on [lo, hi].
///
/// Scans a uniform grid of spacing grid_step, then refines every cell whose
/// best sample is within a small margin of the global best with golden-section
/// search down to an x-tolerance of tol. Ties are broken toward the smaller x.
/// Throws InvalidScenarioError if the objective evaluates to a non-finite
/// value anywhere it is sampled.
ScalarMaximum maximize_scalar(const std::function<double(double)>& objective,
                              double lo, double hi, double tol, double grid_step);

/// Same search, then the winning interior point is polished by bisecting the
/// supplied derivative over a bracket around it, which sharpens the argument
/// to near machine precision (golden-section alone stalls at ~sqrt(eps)). The
/// polish never moves the point by more than a few grid cells and is skipped
/// when no sign change brackets it.
ScalarMaximum maximize_scalar(const std::function<double(double)>& objective,
                              const std::function<double(double)>& derivative,
                              double lo, double hi, double tol, double grid_step);

/// Exact maximizer of q(x) = a*x^2 + b*x + c on [lo, hi]: the clipped
/// stationary point when a < 0, otherwise the better endpoint (smaller x on
/// ties). No tolerance involved.
ScalarMaximum maximize_quadratic(double a, double b, double c, double lo, double hi);

}  // namespace stackgame
