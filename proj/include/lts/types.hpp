#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lts {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = std::uint32_t;

/// Closed time interval [begin, end].
struct Interval {
  double begin = 0.0;
  double end = 0.0;

  double length() const { return end - begin; }
  bool contains(double t, double slack = 0.0) const {
    return t >= begin - slack && t <= end + slack;
  }
  double midpoint() const { return 0.5 * (begin + end); }
};

// Error taxonomy. Each maps to one failure class named by the operation
// contracts; callers catch the std base when they only need the message.

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct DegenerateInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OutOfInterval : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct InsufficientSmoothness : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// Raised when a planner detects that its own guarantee would be broken,
/// e.g. more adaptive steps than r_g. Indicates a bad Upsilon/K declaration.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct ToleranceUnreachable : std::runtime_error {
  ToleranceUnreachable(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_estimate(achieved) {}
  double achieved_estimate;
};

}  // namespace lts
