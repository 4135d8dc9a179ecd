#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsm {

enum class ErrorKind {
  DuplicatePole,
  ZeroResidue,
  EvalAtPole,
  DegenerateForm,
  Unsupported,
  BadAngle,
  DegenerateQuadratic,
  DoubleRoot,
  CollidingPoles,
  DivisionByZero,
  ExcludedPoint,
  ConstraintViolated,
  StencilHitsSingularity,
  NotASingularPoint,
  QuadratureNearPole,
  TraceDiverged,
  EndpointNotReached,
  ShootingFailed,
  StepNearPole,
  DegenerateTriangle,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rsm
