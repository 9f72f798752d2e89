#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mhdflow/error.hpp"
#include "mhdflow/hankel.hpp"
#include "mhdflow/ivp.hpp"
#include "oracles.hpp"

using namespace mhdflow;

namespace {

// f_n = 1 + (alpha - 3/2) 2^n, so H_2^1 = 8 (alpha - 3/2).
TaylorTable synthetic_table(std::size_t order) {
  TaylorTable t;
  t.params = {Rational(0), Rational(0), Rational(0)};
  Rational pw = 1;
  for (std::size_t n = 0; n <= order; ++n, pw *= 2) {
    t.entries.push_back(AlphaPolynomial({Rational(1) - Rational(3, 2) * pw, pw}));
  }
  return t;
}

int sign(const Rational& q) { return sgn(q); }

}  // namespace

TEST_CASE("Hankel entries index the Taylor table") {
  const auto table = taylor_table(ModelParams(2, 2, 1.8), 9);
  const auto h = hankel_entries(table, 1, 3);
  REQUIRE(h.size() == 3);
  CHECK(h(0, 0) == table[3]);
  CHECK(h(0, 2) == table[5]);
  CHECK(h(2, 2) == table[7]);
  CHECK(h(1, 2) == h(2, 1));
  const auto h2 = hankel_entries(table, 2, 3);
  CHECK(h2(2, 2) == table[8]);
  CHECK_THROWS_AS(hankel_entries(table, 2, 4), SolverError);
  CHECK_THROWS_AS(hankel_entries(table, 0, 2), SolverError);
}

TEST_CASE("Bareiss agrees with cofactor expansion") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    SquareMatrix<Rational> a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = oracle::frac(num(rng), den(rng));
    if (trial % 7 == 0 && n > 1)
      for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = a(0, j) * 3;
    const Rational expected = oracle::cofactor_det(a);
    CHECK(bareiss_determinant(a) == expected);
    CHECK(bareiss_determinant(a.transposed()) == expected);

    SquareMatrix<BigInt> z(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) z(i, j) = num(rng);
    CHECK(bareiss_determinant(z) == oracle::cofactor_det(z));
  }
}

TEST_CASE("Bareiss handles a zero leading pivot") {
  SquareMatrix<Rational> a(2);
  a(0, 0) = 0;
  a(0, 1) = 1;
  a(1, 0) = 1;
  a(1, 1) = 0;
  CHECK(bareiss_determinant(a) == -1);
}

TEST_CASE("exact determinant sign matches the expanded polynomial") {
  const auto table = taylor_table(ModelParams(2, 2, 1.8), 9);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> num(-400, 800);
  for (unsigned D : {2u, 3u}) {
    const auto poly = oracle::cofactor_det(hankel_entries(table, 1, D));
    for (int trial = 0; trial < 20; ++trial) {
      const Rational alpha = oracle::frac(num(rng), 64);
      CHECK(det_sign_at(table, 1, D, alpha) == sign(poly(alpha)));
    }
  }
}

TEST_CASE("degenerate table has zero determinant") {
  TaylorTable t;
  t.params = {Rational(0), Rational(0), Rational(0)};
  t.entries.assign(10, AlphaPolynomial::constant(Rational(1)));
  CHECK(det_sign_at(t, 1, 3, Rational(7, 3)) == 0);
}

TEST_CASE("synthetic table has its root at 3/2") {
  const auto t = synthetic_table(8);
  CHECK(det_sign_at(t, 1, 2, Rational(3, 2)) == 0);
  CHECK(det_sign_at(t, 1, 2, Rational(2)) == 1);
  HankelConfig cfg;
  cfg.bracket_halfwidth = 1.0;
  const auto r = find_root(t, cfg, 2, 1.2);
  CHECK(std::abs(r.alpha - 1.5) <= cfg.tol);
  CHECK(r.sign_changes == 1);
  CHECK_FALSE(r.multiple_roots());
  const auto all = find_roots(t, cfg, 2, 1.2);
  REQUIRE(all.size() == 1);
  CHECK(std::abs(all[0] - 1.5) <= cfg.tol);
}

TEST_CASE("a bracket without a sign change reports NoSignChange") {
  const auto t = synthetic_table(8);
  HankelConfig cfg;
  cfg.bracket_halfwidth = 0.5;
  try {
    find_root(t, cfg, 2, 10.0);
    FAIL("expected NoSignChange");
  } catch (const SolverError& e) {
    CHECK(e.code() == ErrorCode::NoSignChange);
  }
}

TEST_CASE("configuration validation") {
  HankelConfig cfg;
  cfg.d = 0;
  CHECK_THROWS_AS(cfg.validate(), SolverError);
  cfg = {};
  cfg.D_max = 1;
  CHECK_THROWS_AS(cfg.validate(), SolverError);
  cfg = {};
  cfg.tol = 0;
  CHECK_THROWS_AS(cfg.validate(), SolverError);
  cfg = {};
  cfg.bracket_halfwidth = -1;
  CHECK_THROWS_AS(cfg.validate(), SolverError);
}

TEST_CASE("without stretching the shear has a closed form") {
  // With m = 0, g = f' obeys g'' = M^2 g + g^2, whose first integral with
  // g(inf) = 0 gives g'(0)^2 = M^2 - 2/3.
  HankelConfig cfg;
  cfg.D_max = 20;
  const auto seq = alpha_sequence(ModelParams(2, 0, 1), cfg);
  REQUIRE(!seq.roots.empty());
  CHECK(std::abs(seq.roots.back().alpha - std::sqrt(10.0 / 3.0)) < 1e-6);
}

TEST_CASE("unit stretching makes the single exponential exact") {
  // m = 1: f = s - 1/beta + exp(-beta eta)/beta with beta = (1 + sqrt 13)/2.
  const double exact = (1.0 + std::sqrt(13.0)) / 2.0;
  const ModelParams p(2, 1, 1);
  HankelConfig cfg;
  cfg.D_max = 20;
  const auto seq = alpha_sequence(p, cfg);
  REQUIRE(!seq.roots.empty());
  CHECK(std::abs(seq.roots.back().alpha - exact) < 1e-5);
  CHECK(std::abs(shoot_refine(p, {2.0, 2.6}) - exact) < 1e-6);
}

TEST_CASE("second Hankel family converges to the same shear") {
  const ModelParams p(2, 2, 1);
  HankelConfig cfg;
  cfg.D_max = 20;
  const auto d1 = alpha_sequence(p, cfg);
  cfg.d = 2;
  const auto d2 = alpha_sequence(p, cfg);
  REQUIRE(d1.converged);
  REQUIRE(!d2.roots.empty());
  CHECK(std::abs(d1.alpha_star - 2.89160479841) < 1e-8);
  CHECK(std::abs(d2.roots.back().alpha - d1.alpha_star) < 1e-4);
}
