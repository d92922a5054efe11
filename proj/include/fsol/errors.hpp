#pragma once

#include <stdexcept>
#include <string>

namespace fsol {

enum class ErrorCode {
  NonOrthogonal,
  NonPositiveWeight,
  NonUnitDirection,
  NoConvergence,
  NotLowerBounded,
  NegativeArgument,
  SingularMatrix,
  DegreeOverflow,
  UnsupportedDimension,
  TailNotDecayed,
  ErrorBudgetExceeded,
  InsufficientNodes,
  HypothesisViolated,
  PathsDisagree,
  SurfaceTooClose,
  InvalidConfig,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace fsol
