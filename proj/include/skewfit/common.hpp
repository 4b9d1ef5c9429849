#pragma once

#include <stdexcept>
#include <string>

namespace skewfit {

// Error taxonomy. Hard usage errors (DomainError, MatrixError, ParseError,
// PreconditionError) indicate a broken call; the sampler-facing ones
// (ConstraintError, DegenerateLatentsError, DegeneratePopulationError,
// NumericError) are recoverable by the caller (retry, fallback, reseed).

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateLatentsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegeneratePopulationError : std::runtime_error {
  DegeneratePopulationError(const std::string& msg, int iteration)
      : std::runtime_error(msg + " (iteration " + std::to_string(iteration) + ")"),
        iteration(iteration) {}
  int iteration;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace skewfit
