#pragma once

#include <stdexcept>
#include <string>

namespace orbithull {

enum class ErrorCode {
  EmptyAlgebra,
  BadDimension,
  ShapeMismatch,
  NotHermitian,
  NoConvergence,
  NotPositive,
  NotContraction,
  NotMajorized,
  NotDoublyStochastic,
  DecompositionStall,
  EpsilonTooSmall,
  RankOverflow,
  BadEpsilon,
  LengthMismatch,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

  // True for failures of an iterative or numerical routine, as opposed to
  // inputs that violate a precondition.
  bool is_numerical() const {
    return code_ == ErrorCode::NoConvergence || code_ == ErrorCode::DecompositionStall ||
           code_ == ErrorCode::NotDoublyStochastic || code_ == ErrorCode::NotMajorized;
  }

 private:
  ErrorCode code_;
};

}  // namespace orbithull
