#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "mhdflow/ansatz.hpp"
#include "mhdflow/model.hpp"

namespace mhdflow {

enum class Method { RK4Fixed, RK45Adaptive };

struct IntegratorConfig {
  Method method = Method::RK45Adaptive;
  double step = 1e-3;  // fixed-step size; also the initial adaptive step
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// nullopt means 10 / beta with beta the first-order ansatz decay rate.
  std::optional<double> eta_max;
  double sample_stride = 0.01;

  void validate() const;
};

struct ProfileRow {
  double eta;
  double f;
  double fp;
  double fpp;
};

struct Extremum {
  double eta;
  double fp;
};

struct Profile {
  std::vector<ProfileRow> rows;  // at multiples of the sample stride
  double alpha_used = 0.0;
  double eta_max = 0.0;
  double tail_fp = 0.0;            // f' at eta_max
  std::vector<Extremum> extrema;   // interior zeros of f'' (local extrema of f')
};

/// State (f, f', f'').
using State = std::array<double, 3>;

/// Right-hand side of the first-order system (f', f'', M^2 f' + f'^2 - m f f'').
State rhs(const ModelParams& params, const State& y);

/// eta_max the config resolves to for these parameters.
double resolve_eta_max(const ModelParams& params, const IntegratorConfig& cfg);

/// Integrates from eta = 0 with (f, f', f'') = (s, -1, alpha) to eta_max.
/// Interior extrema of f' are located from f'' sign changes between steps and
/// refined by bisection to 1e-8 in eta. Throws Blowup when |f''| > 1e12 and
/// StepUnderflow when the adaptive step collapses.
Profile integrate(const ModelParams& params, double alpha, const IntegratorConfig& cfg = {});

/// Which way the trajectory leaves the decaying solution: +1 when f' crosses
/// zero upward (alpha too large), -1 when f' turns back down while still
/// negative (alpha too small), 0 if neither happens before the horizon.
int divergence_side(const ModelParams& params, double alpha, const IntegratorConfig& cfg,
                    double horizon);

/// Bisection on alpha using divergence_side until the bracket is <= 1e-8 wide.
/// Throws BadBracket when both ends diverge the same way.
double shoot_refine(const ModelParams& params, std::pair<double, double> bracket,
                    const IntegratorConfig& cfg = {});

struct MonotonicityReport {
  bool monotone = true;  // f' non-decreasing (1e-9 slack) and no interior extrema
  std::vector<Extremum> extrema;
  double fp_min = 0.0;
  double fp_max = 0.0;
};

/// Uses the profile's refined extrema plus any f'' sign change between rows.
MonotonicityReport monotonicity_report(const Profile& profile);

/// Samples an ansatz solution on the same grid as integrate(); extrema come
/// from sign changes of the analytic second derivative.
Profile sample_ansatz(const AnsatzSolution& sol, double eta_max, double stride);

}  // namespace mhdflow
