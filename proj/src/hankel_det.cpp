#include <utility>

#include "mhdflow/error.hpp"
#include "mhdflow/hankel.hpp"

namespace mhdflow {

BigInt bareiss_determinant(SquareMatrix<BigInt> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && sgn(a(pivot, k)) == 0) ++pivot;
      if (pivot == n) return 0;
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  BigInt det = a(n - 1, n - 1);
  if (sign < 0) det = -det;
  return det;
}

namespace {

// Multiplies row i by the lcm of its denominators; returns the integer matrix
// together with the product of the row factors (always positive).
std::pair<SquareMatrix<BigInt>, BigInt> clear_denominators(const SquareMatrix<Rational>& a) {
  const std::size_t n = a.size();
  SquareMatrix<BigInt> out(n);
  BigInt scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt row_lcm = 1;
    for (std::size_t j = 0; j < n; ++j) {
      mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), a(i, j).get_den_mpz_t());
    }
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = a(i, j).get_num() * (row_lcm / a(i, j).get_den());
    }
    scale *= row_lcm;
  }
  return {std::move(out), std::move(scale)};
}

}  // namespace

Rational bareiss_determinant(const SquareMatrix<Rational>& a) {
  auto [ints, scale] = clear_denominators(a);
  Rational det(bareiss_determinant(std::move(ints)), scale);
  det.canonicalize();
  return det;
}

SquareMatrix<AlphaPolynomial> hankel_entries(const TaylorTable& table, unsigned d, unsigned D) {
  if (D == 0 || d == 0) throw SolverError(ErrorCode::InvalidArgument, "d and D must be positive");
  if (table.order() < 2 * D + d) {
    throw SolverError(ErrorCode::InvalidArgument,
                      "Taylor table order " + std::to_string(table.order()) + " < 2D + d = " +
                          std::to_string(2 * D + d));
  }
  SquareMatrix<AlphaPolynomial> h(D);
  for (unsigned i = 1; i <= D; ++i)
    for (unsigned j = 1; j <= D; ++j) h(i - 1, j - 1) = table[i + j + d];
  return h;
}

int det_sign_at(const TaylorTable& table, unsigned d, unsigned D, const Rational& alpha) {
  if (D == 0 || d == 0) throw SolverError(ErrorCode::InvalidArgument, "d and D must be positive");
  if (table.order() < 2 * D + d) {
    throw SolverError(ErrorCode::InvalidArgument, "Taylor table too short for requested D");
  }
  // Only f_{d+2} .. f_{2D+d} appear. A single positive common scale turns the
  // Hankel matrix into an integer one without touching the sign.
  std::vector<Rational> values(2 * D + d + 1);
  BigInt common = 1;
  for (unsigned n = d + 2; n <= 2 * D + d; ++n) {
    values[n] = table[n](alpha);
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), values[n].get_den_mpz_t());
  }
  std::vector<BigInt> scaled(values.size());
  for (unsigned n = d + 2; n <= 2 * D + d; ++n) {
    scaled[n] = values[n].get_num() * (common / values[n].get_den());
  }
  SquareMatrix<BigInt> h(D);
  for (unsigned i = 1; i <= D; ++i)
    for (unsigned j = 1; j <= D; ++j) h(i - 1, j - 1) = scaled[i + j + d];
  return sgn(bareiss_determinant(std::move(h)));
}

}  // namespace mhdflow
