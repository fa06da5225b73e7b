#pragma once

#include <stdexcept>
#include <string>

namespace wpgeo {

// Failure taxonomy shared by all modules. The CLI maps kinds to exit codes.
enum class ErrorKind {
  InputError,
  TriangulationFailure,
  DegenerateQuadruple,
  NumericalBreakdown,
  MonotonicityViolation,
  OrderingViolation,
  EnergyDrift,
  CrowdingDetected,
  NoDecrease,
  SingularGram,
  ConvergenceFailure,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InputError: return "InputError";
    case ErrorKind::TriangulationFailure: return "TriangulationFailure";
    case ErrorKind::DegenerateQuadruple: return "DegenerateQuadruple";
    case ErrorKind::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorKind::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorKind::OrderingViolation: return "OrderingViolation";
    case ErrorKind::EnergyDrift: return "EnergyDrift";
    case ErrorKind::CrowdingDetected: return "CrowdingDetected";
    case ErrorKind::NoDecrease: return "NoDecrease";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wpgeo
