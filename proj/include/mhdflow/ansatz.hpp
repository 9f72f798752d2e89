#pragma once

#include <optional>
#include <vector>

#include "mhdflow/model.hpp"

namespace mhdflow {

/// Exponential-sum approximation f(eta) ~ sum_{j=0..N} b_j exp(-j beta eta).
struct AnsatzSolution {
  unsigned N = 0;
  double beta = 0.0;
  std::vector<double> b;         // b_0 .. b_N
  double alpha_est = 0.0;        // implied f''(0) = beta^2 sum j^2 b_j
  double residual_norm = 0.0;    // max |R_j|, j = 1..N
};

/// Amplitudes R_1..R_{2N} of exp(-j beta eta) after substituting the ansatz
/// into the ODE; R[j-1] holds R_j.
struct ResidualModes {
  std::vector<double> R;
};

/// Mode j collects
///   j beta (M^2 - j^2 beta^2) b_j                       (linear part)
///   + beta^2 sum_{i+k=j} b_i b_k (m k^2 - i k)          (-f'^2 and m f f'')
/// with 0 <= i <= N, 1 <= k <= N. The constant mode vanishes identically.
ResidualModes residual_modes(const ModelParams& params, const AnsatzSolution& sol);

/// First order: beta = (sqrt(4M^2 + m^2 s^2 - 4m) + m s) / 2, b_1 = 1/beta,
/// b_0 = s - 1/beta. Throws ComplexDecay for a negative discriminant and
/// NoPhysicalRoot when beta <= 0.
AnsatzSolution solve_n1(const ModelParams& params);

/// Coefficients c0..c4 (ascending) of the quartic in beta whose roots give the
/// second-order solutions. Requires m != 0.
std::vector<double> n2_quartic(const ModelParams& params);

/// All real roots of the quartic, ascending.
std::vector<double> n2_quartic_real_roots(const ModelParams& params);

/// Second-order solution for a given beta, with b_0, b_1, b_2 fixed by the two
/// boundary rows and R_1 = 0.
AnsatzSolution n2_solution_for_beta(const ModelParams& params, double beta);

/// Second order. Among positive real quartic roots with |b_2| < |b_1| picks
/// the one minimising |b_2 / b_1|, ties broken by closeness to the first-order
/// beta. Throws RequiresNonzeroM (m == 0) or NoPhysicalRoot.
AnsatzSolution solve_n2(const ModelParams& params);

/// Any order by damped Newton on the boundary rows plus R_1..R_N = 0.
/// Seeds from init, else the second-order solution padded with zeros, else the
/// first-order one. Throws NoConvergence after 100 iterations.
AnsatzSolution solve_general(const ModelParams& params, unsigned N,
                             const std::optional<AnsatzSolution>& init = std::nullopt);

/// sum_j b_j (-j beta)^k exp(-j beta eta), k = derivative in {0, 1, 2}.
double eval_ansatz(const AnsatzSolution& sol, double eta, int derivative);

}  // namespace mhdflow
