#include "mhdflow/model.hpp"

#include <cmath>

#include "mhdflow/error.hpp"

namespace mhdflow {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::DegenerateSystem: return "DegenerateSystem";
    case ErrorCode::PoleNear: return "PoleNear";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::ComplexDecay: return "ComplexDecay";
    case ErrorCode::RequiresNonzeroM: return "RequiresNonzeroM";
    case ErrorCode::NoPhysicalRoot: return "NoPhysicalRoot";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Blowup: return "Blowup";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::BadBracket: return "BadBracket";
  }
  return "Unknown";
}

ModelParams::ModelParams(double hartmann, double stretching, double suction)
    : M(hartmann), m(stretching), s(suction) {
  if (!std::isfinite(M) || !std::isfinite(m) || !std::isfinite(s)) {
    throw SolverError(ErrorCode::InvalidArgument, "model parameters must be finite");
  }
}

BoundaryData boundary_data(const ModelParams& params) { return {params.s, -1.0, 0.0}; }

double ode_residual(const ModelParams& params, double f, double fp, double fpp, double fppp) {
  return fppp - params.M * params.M * fp - fp * fp + params.m * f * fpp;
}

double fppp_at_origin(const ModelParams& params, double alpha) {
  // The residual at eta = 0 with f = s, f' = -1 solved for f'''.
  return -params.M * params.M + 1.0 - params.m * params.s * alpha;
}

}  // namespace mhdflow
