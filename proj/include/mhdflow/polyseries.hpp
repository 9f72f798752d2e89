#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mhdflow/model.hpp"
#include "mhdflow/rational.hpp"

namespace mhdflow {

/// Univariate polynomial in alpha = f''(0) with exact rational coefficients.
/// coeffs()[k] multiplies alpha^k; trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients.
class AlphaPolynomial {
 public:
  AlphaPolynomial() = default;
  explicit AlphaPolynomial(std::vector<Rational> coeffs);
  static AlphaPolynomial constant(const Rational& c);
  static AlphaPolynomial monomial(const Rational& c, std::size_t power);

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

  /// Horner, highest degree first.
  Rational operator()(const Rational& alpha) const;
  double operator()(double alpha) const;

  AlphaPolynomial& operator+=(const AlphaPolynomial& rhs);
  AlphaPolynomial& operator-=(const AlphaPolynomial& rhs);
  AlphaPolynomial& operator*=(const Rational& k);

  friend AlphaPolynomial operator+(AlphaPolynomial a, const AlphaPolynomial& b) { return a += b; }
  friend AlphaPolynomial operator-(AlphaPolynomial a, const AlphaPolynomial& b) { return a -= b; }
  friend AlphaPolynomial operator*(AlphaPolynomial a, const Rational& k) { return a *= k; }
  friend AlphaPolynomial operator*(const AlphaPolynomial& a, const AlphaPolynomial& b);
  friend bool operator==(const AlphaPolynomial& a, const AlphaPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Model parameters as they enter the exact recurrence. Only M^2 appears, so
/// a negative Hartmann number behaves like its absolute value.
struct ExactParams {
  Rational M2;
  Rational m;
  Rational s;

  /// Converts through rational_from_double; throws NotRepresentable.
  static ExactParams from(const ModelParams& params);
  ModelParams to_model() const;
};

/// Taylor coefficients f_0..f_J of f about eta = 0 as polynomials in alpha.
struct TaylorTable {
  ExactParams params;
  std::vector<AlphaPolynomial> entries;

  std::size_t order() const { return entries.size() - 1; }
  const AlphaPolynomial& operator[](std::size_t j) const { return entries[j]; }
};

/// Builds f_0..f_J from f_0 = s, f_1 = -1, f_2 = alpha/2 and the Cauchy-product
/// recurrence obtained by substituting the series into the ODE. J >= 3.
TaylorTable taylor_table(const ExactParams& params, std::size_t order);
TaylorTable taylor_table(const ModelParams& params, std::size_t order);

/// [f_j(alpha)] for j = 0..J, exact.
std::vector<Rational> evaluate_table(const TaylorTable& table, const Rational& alpha);

/// Same values in double precision (for Padé and plotting paths).
std::vector<double> evaluate_table(const TaylorTable& table, double alpha);

/// Coefficients of f' given those of f: (j+1) f_{j+1}.
std::vector<double> derivative_series(std::span<const double> series);

}  // namespace mhdflow
