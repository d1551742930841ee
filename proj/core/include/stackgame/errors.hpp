#pragma once

#include <stdexcept>
#include <string>

namespace stackgame {

/// Malformed configuration or parameter set (bad scenario file, invalid
/// bounds, inconsistent device lists). Parser messages carry line numbers.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The simulation produced values outside the model's domain, e.g. a
/// non-finite objective from extreme coefficients.
class InvalidScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the range-test fit when a response sits on the boundary of Y;
/// such histories have to go through the KKT-residual fit instead.
class NonInteriorHistoryError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Incentive synthesis was asked for a boundary target, where the linear
/// design system degenerates and the iteration stops.
class BoundaryTargetError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace stackgame
