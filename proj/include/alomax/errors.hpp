#pragma once

#include <stdexcept>
#include <string>

namespace alomax {

// Input outside the mathematical domain of an operation (bad parameter,
// pole of a function, threshold out of range).
class domain_error : public std::domain_error {
public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// An iterative scheme ran out of budget before reaching tolerance.  The
// best available estimate is carried so callers can degrade gracefully.
class convergence_error : public std::runtime_error {
public:
  convergence_error(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

private:
  double estimate_;
};

}  // namespace alomax
