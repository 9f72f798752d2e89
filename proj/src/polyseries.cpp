#include "mhdflow/polyseries.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "mhdflow/error.hpp"

namespace mhdflow {

AlphaPolynomial::AlphaPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

AlphaPolynomial AlphaPolynomial::constant(const Rational& c) { return AlphaPolynomial({c}); }

AlphaPolynomial AlphaPolynomial::monomial(const Rational& c, std::size_t power) {
  std::vector<Rational> coeffs(power + 1);
  coeffs[power] = c;
  return AlphaPolynomial(std::move(coeffs));
}

void AlphaPolynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational AlphaPolynomial::operator()(const Rational& alpha) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= alpha;
    acc += *it;
  }
  return acc;
}

double AlphaPolynomial::operator()(double alpha) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * alpha + it->get_d();
  return acc;
}

AlphaPolynomial& AlphaPolynomial::operator+=(const AlphaPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

AlphaPolynomial& AlphaPolynomial::operator-=(const AlphaPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

AlphaPolynomial& AlphaPolynomial::operator*=(const Rational& k) {
  if (sgn(k) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= k;
  return *this;
}

AlphaPolynomial operator*(const AlphaPolynomial& a, const AlphaPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[i + k] += a.coeffs_[i] * b.coeffs_[k];
  }
  return AlphaPolynomial(std::move(out));
}

ExactParams ExactParams::from(const ModelParams& params) {
  const Rational M = rational_from_double(params.M);
  return {M * M, rational_from_double(params.m), rational_from_double(params.s)};
}

ModelParams ExactParams::to_model() const {
  return ModelParams(std::sqrt(M2.get_d()), m.get_d(), s.get_d());
}

TaylorTable taylor_table(const ExactParams& params, std::size_t order) {
  if (order < 3) {
    throw SolverError(ErrorCode::InvalidArgument, "Taylor table order must be at least 3");
  }
  TaylorTable table{params, {}};
  auto& f = table.entries;
  f.reserve(order + 1);
  f.push_back(AlphaPolynomial::constant(params.s));
  f.push_back(AlphaPolynomial::constant(-1));
  f.push_back(AlphaPolynomial::monomial(Rational(1, 2), 1));

  // Coefficient of eta^j in f''' - M^2 f' - f'^2 + m f f'' = 0:
  //   (j+1)(j+2)(j+3) f_{j+3} = M^2 (j+1) f_{j+1}
  //       + sum_k (k+1)(j-k+1) f_{k+1} f_{j-k+1}
  //       - m sum_k (j-k+1)(j-k+2) f_k f_{j-k+2}
  for (std::size_t j = 0; j + 3 <= order; ++j) {
    AlphaPolynomial acc = f[j + 1] * (params.M2 * Rational(static_cast<long>(j + 1)));
    for (std::size_t k = 0; k <= j; ++k) {
      const long w_sq = static_cast<long>((k + 1) * (j - k + 1));
      acc += (f[k + 1] * f[j - k + 1]) * Rational(w_sq);
      if (sgn(params.m) != 0) {
        const long w_ff = static_cast<long>((j - k + 1) * (j - k + 2));
        acc -= (f[k] * f[j - k + 2]) * (params.m * Rational(w_ff));
      }
    }
    const long denom = static_cast<long>((j + 1) * (j + 2) * (j + 3));
    f.push_back(acc * Rational(1, denom));
  }
  return table;
}

TaylorTable taylor_table(const ModelParams& params, std::size_t order) {
  return taylor_table(ExactParams::from(params), order);
}

std::vector<Rational> evaluate_table(const TaylorTable& table, const Rational& alpha) {
  std::vector<Rational> out;
  out.reserve(table.entries.size());
  for (const auto& p : table.entries) out.push_back(p(alpha));
  return out;
}

std::vector<double> evaluate_table(const TaylorTable& table, double alpha) {
  // A double is an exact dyadic rational; evaluating exactly and rounding once
  // avoids cancellation in the high-degree entries.
  const Rational exact_alpha(alpha);
  std::vector<double> out;
  out.reserve(table.entries.size());
  for (const auto& p : table.entries) out.push_back(p(exact_alpha).get_d());
  return out;
}

std::vector<double> derivative_series(std::span<const double> series) {
  std::vector<double> out;
  if (series.size() < 2) return out;
  out.reserve(series.size() - 1);
  for (std::size_t j = 1; j < series.size(); ++j) out.push_back(static_cast<double>(j) * series[j]);
  return out;
}

}  // namespace mhdflow
