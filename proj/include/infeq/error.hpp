#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace infeq {

enum class ErrorKind {
  InvalidExponent,
  InvalidInput,
  InvalidArity,
  InvalidBase,
  OutsideHalfPlane,
  NotInSpace,
  UnsupportedRepresentation,
  UnsupportedNorm,
  TooLarge,
  ToleranceNotMet,
  ConvergenceTooSlow,
  NotConverged,
  Infeasible,
  CertifiedInfeasible,
  UndefinedRatio,
};

std::string_view to_string(ErrorKind kind);

/// Library error. `detail()` carries a kind-specific number: the least-squares
/// residual for Infeasible, the required term count for ConvergenceTooSlow,
/// and NaN otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, double detail = kNoDetail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  double detail() const noexcept { return detail_; }

  static constexpr double kNoDetail = std::numeric_limits<double>::quiet_NaN();

 private:
  ErrorKind kind_;
  double detail_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidArity: return "InvalidArity";
    case ErrorKind::InvalidBase: return "InvalidBase";
    case ErrorKind::OutsideHalfPlane: return "OutsideHalfPlane";
    case ErrorKind::NotInSpace: return "NotInSpace";
    case ErrorKind::UnsupportedRepresentation: return "UnsupportedRepresentation";
    case ErrorKind::UnsupportedNorm: return "UnsupportedNorm";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::ConvergenceTooSlow: return "ConvergenceTooSlow";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::CertifiedInfeasible: return "CertifiedInfeasible";
    case ErrorKind::UndefinedRatio: return "UndefinedRatio";
  }
  return "Unknown";
}

}  // namespace infeq
