#pragma once

#include <stdexcept>
#include <string>

namespace altserve {

// Raised when a solver produces something numerically untrustworthy:
// ill-conditioned linear systems, probability masses outside tolerance,
// residuals that should be tiny but are not.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a simulation run cannot support the requested estimate,
// e.g. no regeneration point was observed or too few cycles for a
// confidence interval.
class insufficient_run_error : public std::runtime_error {
 public:
  explicit insufficient_run_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Raised for malformed experiment specifications (bad JSON layout, unknown
// sweep parameter, contradictory fields). Distinct from invalid_argument so
// the CLI can map it to its own exit code.
class spec_error : public std::runtime_error {
 public:
  explicit spec_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace altserve
