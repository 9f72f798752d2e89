#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mhdflow/hankel.hpp"

using namespace mhdflow;

// Frozen behaviour of the root sequence for M = 2, m = 2, s = 1.8, d = 1.
TEST_CASE("reference case root sequence") {
  HankelConfig cfg;
  cfg.D_max = 30;
  const auto seq = alpha_sequence(ModelParams(2, 2, 1.8), cfg);

  CHECK(seq.converged);
  CHECK(seq.D_reached == 27);
  CHECK(seq.skipped == std::vector<unsigned>{2, 3, 4, 15, 21});
  CHECK(std::abs(seq.alpha_star - 4.20411352519) < 1e-9);
  CHECK(std::abs(seq.alpha_star - 4.20411340) < 1e-6);

  REQUIRE(seq.deltas.size() + 1 == seq.roots.size());
  for (std::size_t i = 0; i < seq.deltas.size(); ++i) {
    const unsigned D = seq.roots[i + 1].D;
    if (D >= 16) CHECK(seq.deltas[i] < 1e-3);
    if (D >= 22) CHECK(seq.deltas[i] < 1e-6);
  }
  // Best agreement in the D <= 15 prefix is about 1.25e-4.
  double best = 1.0;
  for (const auto& r : seq.roots)
    if (r.D <= 15) best = std::min(best, std::abs(r.alpha - 4.20411340));
  CHECK(best > 1e-4);
  CHECK(best < 2e-4);
}
