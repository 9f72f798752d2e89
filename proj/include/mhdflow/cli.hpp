#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mhdflow/ansatz.hpp"
#include "mhdflow/polyseries.hpp"

namespace mhdflow::cli {

struct AnsatzReport {
  std::optional<AnsatzSolution> solution;
  std::string error;  // status token when solution is empty
};

/// Everything `solve` reports. Every number comes from the library modules.
struct RunSummary {
  Rational hartmann;
  ExactParams params;
  unsigned d = 1;
  unsigned D_max = 30;

  std::optional<double> alpha_hankel;
  bool hankel_converged = false;
  unsigned hankel_D_reached = 0;
  std::vector<unsigned> hankel_skipped;
  std::string hankel_error;

  std::optional<double> alpha_shooting;
  std::string shooting_error;

  AnsatzReport ansatz1;
  AnsatzReport ansatz2;
  std::optional<unsigned> ansatzN_order;
  AnsatzReport ansatzN;

  // max over the profile grid of |f'_numeric - f'_ansatz|
  std::optional<double> maxdev_ansatz1;
  std::optional<double> maxdev_ansatz2;
  std::optional<bool> monotone;
  double eta_max = 0.0;

  std::vector<std::string> warnings;
};

/// Formats with 12 significant digits, locale-independent.
std::string format_number(double x);

/// Entry point shared by the executable and the tests. args excludes argv[0].
/// Exit codes: 0 success, 1 usage or I/O error, 2 finished without convergence.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mhdflow::cli
