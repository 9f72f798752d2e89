#include "mhdflow/hankel.hpp"

#include <algorithm>
#include <cmath>

#include "mhdflow/ansatz.hpp"
#include "mhdflow/error.hpp"

namespace mhdflow {

void HankelConfig::validate() const {
  if (d < 1) throw SolverError(ErrorCode::InvalidArgument, "d must be >= 1");
  if (D_max < 2) throw SolverError(ErrorCode::InvalidArgument, "D_max must be >= 2");
  if (!(tol > 0.0)) throw SolverError(ErrorCode::InvalidArgument, "tol must be positive");
  if (!std::isnan(bracket_halfwidth) && !(bracket_halfwidth > 0.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "bracket_halfwidth must be positive");
  }
  if (!(seq_tol > 0.0)) throw SolverError(ErrorCode::InvalidArgument, "seq_tol must be positive");
  if (!(accept_factor > 0.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "accept_factor must be positive");
  }
  if (scan_points < 2) throw SolverError(ErrorCode::InvalidArgument, "scan_points must be >= 2");
}

namespace {

struct Bracket {
  Rational lo;
  Rational hi;
  int sign_lo;
};

double halfwidth_for(const HankelConfig& cfg, double guess) {
  double w = std::isnan(cfg.bracket_halfwidth) ? 0.5 * std::abs(guess) : cfg.bracket_halfwidth;
  if (!(w > 0.0)) w = 0.5;
  return w;
}

Rational grid_point(long k, int e) {
  return e >= 0 ? dyadic(BigInt(k), static_cast<unsigned>(e))
                : Rational(BigInt(k) << static_cast<unsigned>(-e));
}

// Two point sets, merged:
//  - a uniform grid k * 2^-e over [guess - w, guess + w], 2^-e being the
//    largest power of two not above 2w / (scan_points - 1);
//  - guess (snapped to a ~tol dyadic) +- tol * 2^k, k = 0, 1, ... up to w.
// The geometric part separates close root pairs next to the guess that the
// uniform grid would step over. All points are short dyadics, which keeps the
// exact Hankel entries small.
std::vector<Rational> scan_points(const HankelConfig& cfg, double guess) {
  const double w = halfwidth_for(cfg, guess);
  std::vector<Rational> pts;

  const int e = -static_cast<int>(std::floor(std::log2(2.0 * w / (cfg.scan_points - 1))));
  const double step = std::ldexp(1.0, -e);
  const auto first = static_cast<long>(std::floor((guess - w) / step));
  const auto last = static_cast<long>(std::ceil((guess + w) / step));
  for (long k = first; k <= last; ++k) pts.push_back(grid_point(k, e));

  const int g = -static_cast<int>(std::floor(std::log2(cfg.tol)));
  const Rational center = grid_point(std::lround(std::ldexp(guess, g)), g);
  pts.push_back(center);
  for (Rational r = grid_point(1, g); r.get_d() <= w; r *= 2) {
    pts.push_back(center - r);
    pts.push_back(center + r);
  }

  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<Bracket> scan(const TaylorTable& table, const HankelConfig& cfg, unsigned D,
                          double guess) {
  const auto pts = scan_points(cfg, guess);
  std::vector<Bracket> brackets;
  Rational prev_x = pts.front();
  int prev_s = det_sign_at(table, cfg.d, D, prev_x);
  if (prev_s == 0) brackets.push_back({prev_x, prev_x, 0});
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const Rational& x = pts[k];
    const int s = det_sign_at(table, cfg.d, D, x);
    if (s == 0) {
      brackets.push_back({x, x, 0});
    } else if (prev_s != 0 && s != prev_s) {
      brackets.push_back({prev_x, x, prev_s});
    }
    prev_x = x;
    prev_s = s;
  }
  return brackets;
}

double bisect(const TaylorTable& table, const HankelConfig& cfg, unsigned D, Bracket b) {
  if (b.sign_lo == 0) return b.lo.get_d();
  const Rational tol(cfg.tol);
  while (b.hi - b.lo > tol) {
    Rational mid = (b.lo + b.hi) / 2;
    const int s = det_sign_at(table, cfg.d, D, mid);
    if (s == 0) return mid.get_d();
    if (s == b.sign_lo) {
      b.lo = std::move(mid);
    } else {
      b.hi = std::move(mid);
    }
  }
  return Rational((b.lo + b.hi) / 2).get_d();
}

double midpoint(const Bracket& b) { return Rational((b.lo + b.hi) / 2).get_d(); }

}  // namespace

RootResult find_root(const TaylorTable& table, const HankelConfig& cfg, unsigned D, double guess) {
  cfg.validate();
  const auto brackets = scan(table, cfg, D, guess);
  if (brackets.empty()) {
    throw SolverError(ErrorCode::NoSignChange,
                      "no sign change of H_" + std::to_string(D) + " within +-" +
                          std::to_string(halfwidth_for(cfg, guess)) + " of " +
                          std::to_string(guess));
  }
  const auto nearest = std::min_element(
      brackets.begin(), brackets.end(), [guess](const Bracket& a, const Bracket& b) {
        return std::abs(midpoint(a) - guess) < std::abs(midpoint(b) - guess);
      });
  return {bisect(table, cfg, D, *nearest), brackets.size()};
}

std::vector<double> find_roots(const TaylorTable& table, const HankelConfig& cfg, unsigned D,
                               double guess) {
  cfg.validate();
  std::vector<double> roots;
  for (const auto& b : scan(table, cfg, D, guess)) roots.push_back(bisect(table, cfg, D, b));
  return roots;
}

RootSequence alpha_sequence(const ModelParams& params, const HankelConfig& cfg) {
  return alpha_sequence(ExactParams::from(params), cfg);
}

RootSequence alpha_sequence(const ExactParams& params, const HankelConfig& cfg) {
  cfg.validate();
  HankelConfig run = cfg;
  if (std::isnan(run.seed)) run.seed = solve_n1(params.to_model()).alpha_est;
  if (!std::isfinite(run.seed)) throw SolverError(ErrorCode::InvalidArgument, "seed must be finite");
  // The scan window stays the one implied by the original seed.
  run.bracket_halfwidth = halfwidth_for(run, run.seed);

  const TaylorTable table = taylor_table(params, 2 * run.D_max + run.d);
  RootSequence seq;
  double estimate = run.seed;
  for (unsigned D = 2; D <= run.D_max; ++D) {
    RootResult r;
    try {
      r = find_root(table, run, D, estimate);
    } catch (const SolverError& e) {
      if (e.code() != ErrorCode::NoSignChange) throw;
      seq.skipped.push_back(D);
      continue;
    }
    // A root further from the running estimate than accept_factor times the
    // largest of the last three steps belongs to another branch; H_D simply
    // has no real root near the physical value at this D.
    if (!seq.deltas.empty()) {
      const std::size_t n = seq.deltas.size();
      const double recent = *std::max_element(seq.deltas.end() - std::min<std::size_t>(n, 3),
                                              seq.deltas.end());
      if (std::abs(r.alpha - estimate) > run.accept_factor * recent) {
        seq.skipped.push_back(D);
        continue;
      }
    }
    if (r.multiple_roots()) {
      seq.warnings.push_back("MultipleRoots: D=" + std::to_string(D) + " had " +
                             std::to_string(r.sign_changes) + " sign changes");
    }
    if (!seq.roots.empty()) seq.deltas.push_back(std::abs(r.alpha - seq.roots.back().alpha));
    seq.roots.push_back({D, r.alpha, r.sign_changes});
    estimate = r.alpha;

    const std::size_t n = seq.deltas.size();
    if (n >= 3 && seq.deltas[n - 1] <= run.seq_tol && seq.deltas[n - 2] <= run.seq_tol &&
        seq.deltas[n - 3] <= run.seq_tol && seq.deltas[n - 1] <= seq.deltas[n - 2] &&
        seq.deltas[n - 2] <= seq.deltas[n - 3]) {
      seq.converged = true;
      break;
    }
  }
  if (seq.roots.empty()) {
    throw SolverError(ErrorCode::NoSignChange, "no Hankel root found for any D up to " +
                                                   std::to_string(run.D_max));
  }
  {
    seq.alpha_star = seq.roots.back().alpha;
    seq.D_reached = seq.roots.back().D;
  }
  return seq;
}

}  // namespace mhdflow
