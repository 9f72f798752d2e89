#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "mhdflow/polyseries.hpp"
#include "mhdflow/rational.hpp"

namespace mhdflow {

/// Dense row-major square matrix, just enough for the Hankel code.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  SquareMatrix transposed() const {
    SquareMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination. Rows are first
/// scaled to integers, so every intermediate division is exact.
Rational bareiss_determinant(const SquareMatrix<Rational>& a);
BigInt bareiss_determinant(SquareMatrix<BigInt> a);

struct HankelConfig {
  unsigned d = 1;
  unsigned D_max = 30;
  /// Initial guess for alpha; NaN means "use the first-order ansatz estimate".
  double seed = std::numeric_limits<double>::quiet_NaN();
  /// NaN means 0.5 * |seed|.
  double bracket_halfwidth = std::numeric_limits<double>::quiet_NaN();
  double tol = 1e-10;
  /// The sequence counts as converged once three consecutive steps
  /// |alpha_D - alpha_D'| are <= seq_tol and non-increasing.
  double seq_tol = 1e-6;
  /// A root is accepted into the sequence only within accept_factor times the
  /// largest of the last three steps from the running estimate.
  double accept_factor = 10.0;
  /// Number of scan points across [guess - w, guess + w] (w/64 spacing at 129).
  unsigned scan_points = 129;

  void validate() const;
};

/// D x D matrix with (i, j) entry f_{i+j+d}, i, j = 1..D. Needs order >= 2D + d.
SquareMatrix<AlphaPolynomial> hankel_entries(const TaylorTable& table, unsigned d, unsigned D);

/// Exact sign (-1, 0, +1) of H_D^d at a rational alpha.
int det_sign_at(const TaylorTable& table, unsigned d, unsigned D, const Rational& alpha);

struct RootResult {
  double alpha = 0.0;
  /// Number of sign changes seen during the scan; > 1 means MultipleRoots and
  /// the root nearest the guess was returned.
  std::size_t sign_changes = 0;
  bool multiple_roots() const { return sign_changes > 1; }
};

/// Scans dyadic points across [guess - w, guess + w], then bisects the bracket
/// nearest the guess with exact signs until its width is <= cfg.tol. Throws
/// SolverError(NoSignChange) when the scan finds no bracket.
RootResult find_root(const TaylorTable& table, const HankelConfig& cfg, unsigned D, double guess);

/// Every root bracketed by the scan, each bisected to cfg.tol, sorted by value.
std::vector<double> find_roots(const TaylorTable& table, const HankelConfig& cfg, unsigned D,
                               double guess);

struct RootSequence {
  struct Entry {
    unsigned D;
    double alpha;
    std::size_t sign_changes;
  };
  std::vector<Entry> roots;
  /// D values whose determinant had no real root near the running estimate.
  std::vector<unsigned> skipped;
  /// |alpha_D - alpha_{D'}| between consecutive accepted roots.
  std::vector<double> deltas;
  bool converged = false;
  double alpha_star = std::numeric_limits<double>::quiet_NaN();
  unsigned D_reached = 0;
  std::vector<std::string> warnings;
};

/// Root sequence alpha_D, D = 2..D_max, by continuation: each D is searched
/// around the last accepted root (cfg.seed for the first). D values with no
/// acceptable root are recorded in `skipped` and do not move the estimate.
/// Stops early on convergence.
RootSequence alpha_sequence(const ModelParams& params, const HankelConfig& cfg);
RootSequence alpha_sequence(const ExactParams& params, const HankelConfig& cfg);

}  // namespace mhdflow
