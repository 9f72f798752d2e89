#pragma once

namespace mhdflow {

/// Parameters of the shrinking-sheet similarity equation
///
///   f''' - M^2 f' - f'^2 + m f f'' = 0,   f(0) = s, f'(0) = -1, f'(inf) = 0.
///
/// Only finiteness is enforced here. Operations that need m != 0 or a real
/// decay rate check that themselves.
struct ModelParams {
  double M = 0.0;  // Hartmann number
  double m = 0.0;  // stretching parameter
  double s = 0.0;  // suction parameter

  ModelParams() = default;
  ModelParams(double hartmann, double stretching, double suction);
};

/// Boundary data implied by a parameter set. Not user-editable.
struct BoundaryData {
  double f0;
  double fp0;
  double fp_inf;
};

BoundaryData boundary_data(const ModelParams& params);

/// Pointwise residual fppp - M^2 fp - fp^2 + m f fpp.
double ode_residual(const ModelParams& params, double f, double fp, double fpp, double fppp);

/// f'''(0) forced by the equation once f''(0) = alpha is chosen.
double fppp_at_origin(const ModelParams& params, double alpha);

}  // namespace mhdflow
