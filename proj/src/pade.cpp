#include "mhdflow/pade.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "mhdflow/error.hpp"

namespace mhdflow {

namespace {

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

PadeApproximant pade(std::span<const double> series, unsigned L, unsigned K) {
  if (series.size() < static_cast<std::size_t>(L) + K + 1) {
    throw SolverError(ErrorCode::InvalidArgument,
                      "[" + std::to_string(L) + "/" + std::to_string(K) + "] needs " +
                          std::to_string(L + K + 1) + " coefficients, got " +
                          std::to_string(series.size()));
  }
  auto c = [&](long n) { return n < 0 ? 0.0 : series[static_cast<std::size_t>(n)]; };

  PadeApproximant out;
  out.den.assign(K + 1, 0.0);
  out.den[0] = 1.0;
  if (K > 0) {
    Eigen::MatrixXd A(K, K);
    Eigen::VectorXd rhs(K);
    for (unsigned k = 1; k <= K; ++k) {
      for (unsigned i = 1; i <= K; ++i) A(k - 1, i - 1) = c(static_cast<long>(L + k) - i);
      rhs(k - 1) = -c(L + k);
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond >= 1e-13)) {
      throw SolverError(ErrorCode::DegenerateSystem,
                        "Toeplitz system for [" + std::to_string(L) + "/" + std::to_string(K) +
                            "] has rcond " + std::to_string(rcond));
    }
    const Eigen::VectorXd q = lu.solve(rhs);
    for (unsigned i = 1; i <= K; ++i) out.den[i] = q(i - 1);
  }

  out.num.assign(L + 1, 0.0);
  for (unsigned j = 0; j <= L; ++j) {
    double acc = 0.0;
    for (unsigned i = 0; i <= std::min(j, K); ++i) acc += out.den[i] * c(j - i);
    out.num[j] = acc;
  }
  return out;
}

double pade_eval(const PadeApproximant& p, double eta) {
  const double num = horner(p.num, eta);
  const double den = horner(p.den, eta);
  if (den == 0.0 || std::abs(den) < 1e-12 * std::abs(num)) {
    throw SolverError(ErrorCode::PoleNear, "denominator vanishes near eta = " + std::to_string(eta));
  }
  return num / den;
}

}  // namespace mhdflow
