#include "mhdflow/ansatz.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "mhdflow/error.hpp"

namespace mhdflow {

namespace {

double max_abs(const std::vector<double>& v, std::size_t count) {
  double out = 0.0;
  for (std::size_t i = 0; i < count && i < v.size(); ++i) out = std::max(out, std::abs(v[i]));
  return out;
}

void finish(const ModelParams& params, AnsatzSolution& sol) {
  double acc = 0.0;
  for (unsigned j = 1; j <= sol.N; ++j) acc += static_cast<double>(j * j) * sol.b[j];
  sol.alpha_est = sol.beta * sol.beta * acc;
  sol.residual_norm = max_abs(residual_modes(params, sol).R, sol.N);
}

// Residual vector of the defining system: two boundary rows, then R_1..R_N.
Eigen::VectorXd system_residual(const ModelParams& params, const AnsatzSolution& sol) {
  const unsigned N = sol.N;
  Eigen::VectorXd F(N + 2);
  double sum_b = 0.0;
  double sum_jb = 0.0;
  for (unsigned j = 0; j <= N; ++j) {
    sum_b += sol.b[j];
    sum_jb += static_cast<double>(j) * sol.b[j];
  }
  F(0) = sum_b - params.s;
  F(1) = sol.beta * sum_jb - 1.0;
  const auto modes = residual_modes(params, sol);
  for (unsigned j = 1; j <= N; ++j) F(1 + j) = modes.R[j - 1];
  return F;
}

Eigen::MatrixXd system_jacobian(const ModelParams& params, const AnsatzSolution& sol) {
  const unsigned N = sol.N;
  const double beta = sol.beta;
  const double M2 = params.M * params.M;
  const auto& b = sol.b;
  auto c = [&](unsigned i, unsigned k) {
    return params.m * static_cast<double>(k * k) - static_cast<double>(i * k);
  };

  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N + 2, N + 2);
  double sum_jb = 0.0;
  for (unsigned l = 0; l <= N; ++l) {
    J(0, l) = 1.0;
    J(1, l) = beta * static_cast<double>(l);
    sum_jb += static_cast<double>(l) * b[l];
  }
  J(1, N + 1) = sum_jb;

  for (unsigned j = 1; j <= N; ++j) {
    const auto row = static_cast<Eigen::Index>(1 + j);
    const double jd = static_cast<double>(j);
    J(row, j) += jd * beta * (M2 - jd * jd * beta * beta);
    double dbeta = jd * (M2 - 3.0 * jd * jd * beta * beta) * b[j];
    double quad = 0.0;
    for (unsigned k = 1; k <= std::min(j, N); ++k) {
      const unsigned i = j - k;
      if (i > N) continue;
      quad += b[i] * b[k] * c(i, k);
      J(row, i) += beta * beta * b[k] * c(i, k);
      J(row, k) += beta * beta * b[i] * c(i, k);
    }
    dbeta += 2.0 * beta * quad;
    J(row, N + 1) = dbeta;
  }
  return J;
}

}  // namespace

ResidualModes residual_modes(const ModelParams& params, const AnsatzSolution& sol) {
  if (!(sol.beta > 0.0)) throw SolverError(ErrorCode::InvalidArgument, "beta must be positive");
  const unsigned N = sol.N;
  const double beta = sol.beta;
  const double M2 = params.M * params.M;
  ResidualModes out;
  out.R.assign(2 * N, 0.0);
  for (unsigned j = 1; j <= N; ++j) {
    const double jd = static_cast<double>(j);
    out.R[j - 1] += jd * beta * (M2 - jd * jd * beta * beta) * sol.b[j];
  }
  for (unsigned i = 0; i <= N; ++i) {
    for (unsigned k = 1; k <= N; ++k) {
      const double weight = params.m * static_cast<double>(k * k) - static_cast<double>(i * k);
      out.R[i + k - 1] += beta * beta * sol.b[i] * sol.b[k] * weight;
    }
  }
  return out;
}

AnsatzSolution solve_n1(const ModelParams& params) {
  const double disc = 4.0 * params.M * params.M + params.m * params.m * params.s * params.s -
                      4.0 * params.m;
  if (disc < 0.0) {
    throw SolverError(ErrorCode::ComplexDecay,
                      "4M^2 + m^2 s^2 - 4m = " + std::to_string(disc) + " < 0");
  }
  AnsatzSolution sol;
  sol.N = 1;
  sol.beta = 0.5 * (std::sqrt(disc) + params.m * params.s);
  if (!(sol.beta > 0.0)) {
    throw SolverError(ErrorCode::NoPhysicalRoot, "first-order decay rate is not positive");
  }
  sol.b = {params.s - 1.0 / sol.beta, 1.0 / sol.beta};
  finish(params, sol);
  return sol;
}

std::vector<double> n2_quartic(const ModelParams& params) {
  const double M = params.M;
  const double m = params.m;
  const double s = params.s;
  if (m == 0.0) throw SolverError(ErrorCode::RequiresNonzeroM, "second-order ansatz needs m != 0");
  const double M2 = M * M;
  return {
      -2.0 * M2 * M2 * (3.0 * m - 2.0) - 2.0 * M2 * m * (2.0 - 3.0 * m) - m * m * (m - 1.0),
      -2.0 * m * s * (M2 * (5.0 * m - 4.0) - 2.0 * m * (m - 1.0)),
      -2.0 * (2.0 * m * (m * m * s * s - m * s * s - 1.0) - M2 * (3.0 * m - 4.0)),
      -4.0 * m * s * (2.0 - m),
      4.0,
  };
}

std::vector<double> n2_quartic_real_roots(const ModelParams& params) {
  const auto c = n2_quartic(params);
  // Eigenvalues of the companion matrix enumerate all four roots; the real
  // ones are then polished by Newton on the original quartic.
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < 4; ++i) companion(i, 3) = -c[static_cast<std::size_t>(i)] / c[4];
  const Eigen::EigenSolver<Eigen::Matrix4d> es(companion, false);
  const auto ev = es.eigenvalues();

  auto poly = [&](double x) { return (((c[4] * x + c[3]) * x + c[2]) * x + c[1]) * x + c[0]; };
  auto dpoly = [&](double x) { return ((4.0 * c[4] * x + 3.0 * c[3]) * x + 2.0 * c[2]) * x + c[1]; };

  std::vector<double> roots;
  for (int i = 0; i < 4; ++i) {
    const auto z = ev(i);
    if (std::abs(z.imag()) > 1e-7 * std::max(1.0, std::abs(z))) continue;
    double x = z.real();
    for (int it = 0; it < 50; ++it) {
      const double dp = dpoly(x);
      if (dp == 0.0) break;
      const double dx = poly(x) / dp;
      x -= dx;
      if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
        break;
    }
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

AnsatzSolution n2_solution_for_beta(const ModelParams& params, double beta) {
  const double M2 = params.M * params.M;
  const double m = params.m;
  const double s = params.s;
  if (m == 0.0) throw SolverError(ErrorCode::RequiresNonzeroM, "second-order ansatz needs m != 0");
  AnsatzSolution sol;
  sol.N = 2;
  sol.beta = beta;
  const double den = m * beta;
  sol.b = {
      (beta * beta - M2) / den,
      (2.0 * (M2 - beta * beta) + m * (2.0 * beta * s - 1.0)) / den,
      (beta * beta - M2 + m * (1.0 - beta * s)) / den,
  };
  finish(params, sol);
  return sol;
}

AnsatzSolution solve_n2(const ModelParams& params) {
  if (params.m == 0.0) {
    throw SolverError(ErrorCode::RequiresNonzeroM, "second-order ansatz needs m != 0");
  }
  double beta1 = std::numeric_limits<double>::quiet_NaN();
  try {
    beta1 = solve_n1(params).beta;
  } catch (const SolverError&) {
  }

  std::optional<AnsatzSolution> best;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (double beta : n2_quartic_real_roots(params)) {
    if (!(beta > 0.0)) continue;
    AnsatzSolution cand = n2_solution_for_beta(params, beta);
    if (!(std::abs(cand.b[2]) < std::abs(cand.b[1]))) continue;
    const double ratio = std::abs(cand.b[2] / cand.b[1]);
    bool take = !best || ratio < best_ratio;
    if (best && ratio == best_ratio && !std::isnan(beta1)) {
      take = std::abs(beta - beta1) < std::abs(best->beta - beta1);
    }
    if (take) {
      best = std::move(cand);
      best_ratio = ratio;
    }
  }
  if (!best) {
    throw SolverError(ErrorCode::NoPhysicalRoot,
                      "no positive quartic root gives a decaying coefficient sequence");
  }
  return *best;
}

AnsatzSolution solve_general(const ModelParams& params, unsigned N,
                             const std::optional<AnsatzSolution>& init) {
  if (N < 1) throw SolverError(ErrorCode::InvalidArgument, "ansatz order must be >= 1");

  AnsatzSolution x;
  if (init) {
    x = *init;
  } else if (N >= 2) {
    try {
      x = solve_n2(params);
    } catch (const SolverError& e) {
      if (e.code() != ErrorCode::RequiresNonzeroM && e.code() != ErrorCode::NoPhysicalRoot) throw;
      x = solve_n1(params);
    }
  } else {
    x = solve_n1(params);
  }
  x.b.resize(N + 1, 0.0);
  x.N = N;
  if (!(x.beta > 0.0)) throw SolverError(ErrorCode::InvalidArgument, "initial beta must be positive");

  constexpr int kMaxIterations = 100;
  constexpr int kMaxHalvings = 20;
  constexpr double kTarget = 1e-13;

  Eigen::VectorXd F = system_residual(params, x);
  double norm = F.lpNorm<Eigen::Infinity>();
  for (int iter = 0; iter < kMaxIterations && norm > kTarget; ++iter) {
    const Eigen::MatrixXd J = system_jacobian(params, x);
    const Eigen::VectorXd step = J.fullPivLu().solve(-F);
    if (!step.allFinite()) break;

    double lambda = 1.0;
    AnsatzSolution trial = x;
    Eigen::VectorXd trial_F;
    double trial_norm = std::numeric_limits<double>::infinity();
    for (int h = 0; h <= kMaxHalvings; ++h, lambda *= 0.5) {
      trial = x;
      for (unsigned l = 0; l <= N; ++l) trial.b[l] += lambda * step(l);
      trial.beta += lambda * step(N + 1);
      if (!(trial.beta > 0.0)) continue;
      trial_F = system_residual(params, trial);
      trial_norm = trial_F.lpNorm<Eigen::Infinity>();
      if (trial_norm < norm) break;
    }
    if (!(trial_norm < norm)) break;
    x = std::move(trial);
    F = std::move(trial_F);
    norm = trial_norm;
  }

  finish(params, x);
  if (!(norm < 1e-10)) {
    throw SolverError(ErrorCode::NoConvergence,
                      "order-" + std::to_string(N) + " ansatz stalled at residual " +
                          std::to_string(norm));
  }
  return x;
}

double eval_ansatz(const AnsatzSolution& sol, double eta, int derivative) {
  if (eta < 0.0) throw SolverError(ErrorCode::InvalidArgument, "eta must be non-negative");
  if (derivative < 0 || derivative > 2) {
    throw SolverError(ErrorCode::InvalidArgument, "derivative must be 0, 1 or 2");
  }
  double acc = 0.0;
  for (unsigned j = 0; j < sol.b.size(); ++j) {
    const double rate = -static_cast<double>(j) * sol.beta;
    acc += sol.b[j] * std::pow(rate, derivative) * std::exp(rate * eta);
  }
  return acc;
}

}  // namespace mhdflow
