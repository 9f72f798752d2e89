#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mhdflow/error.hpp"
#include "mhdflow/ivp.hpp"
#include "mhdflow/pade.hpp"
#include "mhdflow/polyseries.hpp"
#include "oracles.hpp"

using namespace mhdflow;

namespace {

std::vector<double> exp_series(std::size_t n) {
  std::vector<double> c(n);
  double term = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    c[k] = term;
    term /= static_cast<double>(k + 1);
  }
  return c;
}

}  // namespace

TEST_CASE("geometric series [0/1]") {
  const std::vector<double> c(4, 1.0);
  const auto p = pade(c, 0, 1);
  REQUIRE(p.num.size() == 1);
  REQUIRE(p.den.size() == 2);
  CHECK(p.num[0] == doctest::Approx(1.0));
  CHECK(p.den[0] == 1.0);
  CHECK(p.den[1] == doctest::Approx(-1.0));
  CHECK(pade_eval(p, 0.5) == doctest::Approx(2.0));
}

TEST_CASE("exp [1/1]") {
  const auto p = pade(exp_series(3), 1, 1);
  CHECK(p.num[0] == doctest::Approx(1.0));
  CHECK(p.num[1] == doctest::Approx(0.5));
  CHECK(p.den[1] == doctest::Approx(-0.5));
  CHECK(pade_eval(p, 0.0) == 1.0);
}

TEST_CASE("re-expansion reproduces the series through order L+K") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned L = static_cast<unsigned>(trial % 5), K = static_cast<unsigned>(1 + trial % 4);
    const auto c = oracle::random_rational_series(L, K, L + K + 1, rng);
    const auto p = pade(c, L, K);
    CHECK(pade_eval(p, 0.0) == doctest::Approx(c[0]).epsilon(1e-12));
    const auto q = oracle::reexpand(p, c.size());
    for (std::size_t k = 0; k < c.size(); ++k) CHECK(std::abs(q[k] - c[k]) < 1e-12 * (1 + std::abs(c[k])));
  }
}

TEST_CASE("degenerate and short inputs") {
  const std::vector<double> zeros(5, 0.0);
  CHECK_THROWS_AS(pade(zeros, 1, 2), SolverError);
  try {
    pade(zeros, 1, 2);
  } catch (const SolverError& e) {
    CHECK(e.code() == ErrorCode::DegenerateSystem);
  }
  CHECK_THROWS_AS(pade(std::vector<double>{1.0, 1.0}, 1, 1), SolverError);
}

TEST_CASE("evaluation at a pole") {
  const auto p = pade(std::vector<double>(4, 1.0), 0, 1);
  try {
    pade_eval(p, 1.0);
    FAIL("expected PoleNear");
  } catch (const SolverError& e) {
    CHECK(e.code() == ErrorCode::PoleNear);
  }
}

TEST_CASE("[8/8] of the velocity series tracks the integrated profile") {
  const ModelParams params(2, 2, 1.8);
  const double alpha = 4.20411340;
  const auto table = taylor_table(params, 17);
  const auto f = evaluate_table(table, alpha);
  const auto fp = derivative_series(f);
  const auto p = pade(fp, 8, 8);

  IntegratorConfig cfg;
  cfg.eta_max = 2.0;
  cfg.sample_stride = 1.0;
  const auto prof = integrate(params, alpha, cfg);
  REQUIRE(prof.rows.size() == 3);
  CHECK(std::abs(pade_eval(p, 1.0) - prof.rows[1].fp) < 1e-4);
  CHECK(std::abs(pade_eval(p, 2.0) - prof.rows[2].fp) < 1e-3);
}
