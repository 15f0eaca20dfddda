#pragma once

#include <stdexcept>
#include <string>

namespace depq {

enum class ErrorCode {
  InvalidArgument,
  InvalidDistribution,
  NonConvergence,
  SingularMatrix,
  StabilityViolation,
  RoucheCountMismatch,
  PoleOnAxis,
  DualityViolation,
  OrderingViolation,
};

/// Stable snake_case identifier used in machine-readable error output.
inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::InvalidDistribution: return "invalid_distribution";
    case ErrorCode::NonConvergence: return "non_convergence";
    case ErrorCode::SingularMatrix: return "singular_matrix";
    case ErrorCode::StabilityViolation: return "stability_violated";
    case ErrorCode::RoucheCountMismatch: return "rouche_count_mismatch";
    case ErrorCode::PoleOnAxis: return "pole_on_axis";
    case ErrorCode::DualityViolation: return "duality_violation";
    case ErrorCode::OrderingViolation: return "ordering_violation";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace depq
