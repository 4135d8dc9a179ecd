#include "rsm/error.hpp"

namespace rsm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicatePole: return "DuplicatePole";
    case ErrorKind::ZeroResidue: return "ZeroResidue";
    case ErrorKind::EvalAtPole: return "EvalAtPole";
    case ErrorKind::DegenerateForm: return "DegenerateForm";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::BadAngle: return "BadAngle";
    case ErrorKind::DegenerateQuadratic: return "DegenerateQuadratic";
    case ErrorKind::DoubleRoot: return "DoubleRoot";
    case ErrorKind::CollidingPoles: return "CollidingPoles";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ExcludedPoint: return "ExcludedPoint";
    case ErrorKind::ConstraintViolated: return "ConstraintViolated";
    case ErrorKind::StencilHitsSingularity: return "StencilHitsSingularity";
    case ErrorKind::NotASingularPoint: return "NotASingularPoint";
    case ErrorKind::QuadratureNearPole: return "QuadratureNearPole";
    case ErrorKind::TraceDiverged: return "TraceDiverged";
    case ErrorKind::EndpointNotReached: return "EndpointNotReached";
    case ErrorKind::ShootingFailed: return "ShootingFailed";
    case ErrorKind::StepNearPole: return "StepNearPole";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace rsm
