#include "mhdflow/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "mhdflow/error.hpp"
#include "mhdflow/hankel.hpp"
#include "mhdflow/ivp.hpp"

namespace mhdflow::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string M;
  std::string m;
  std::string s;
  unsigned d = 1;
  unsigned D_max = 30;
  std::string tol = "1e-10";
  std::string eta_max = "auto";
  std::string stride = "0.01";
  unsigned N = 0;
  std::string out;
  std::string format;
  std::string alpha;
  std::string sweep;
  std::string from;
  std::string to;
  unsigned count = 0;
};

struct Problem {
  Rational hartmann;
  ExactParams exact;
  ModelParams model;
};

Problem make_problem(const std::string& M, const std::string& m, const std::string& s) {
  const Rational hartmann = parse_decimal(M);
  Problem p;
  p.hartmann = hartmann;
  p.exact = {hartmann * hartmann, parse_decimal(m), parse_decimal(s)};
  p.model = ModelParams(to_double(hartmann), to_double(p.exact.m), to_double(p.exact.s));
  return p;
}

std::string status_token(const std::exception& e) {
  if (const auto* se = dynamic_cast<const SolverError*>(&e)) return std::string(to_string(se->code()));
  return "Error";
}

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

Json number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

IntegratorConfig integrator_config(const Options& opt) {
  IntegratorConfig cfg;
  if (opt.eta_max != "auto") cfg.eta_max = to_double(parse_decimal(opt.eta_max));
  cfg.sample_stride = to_double(parse_decimal(opt.stride));
  cfg.validate();
  return cfg;
}

HankelConfig hankel_config(const Options& opt) {
  HankelConfig cfg;
  cfg.d = opt.d;
  cfg.D_max = opt.D_max;
  cfg.tol = to_double(parse_decimal(opt.tol));
  cfg.validate();
  return cfg;
}

AnsatzReport try_ansatz(const std::function<AnsatzSolution()>& solve) {
  AnsatzReport r;
  try {
    r.solution = solve();
  } catch (const SolverError& e) {
    r.error = status_token(e);
  }
  return r;
}

// Shooting bracket around the best ansatz estimate, widened until the two ends
// diverge in opposite directions.
double shoot_from_ansatz(const ModelParams& params, double center, const IntegratorConfig& icfg) {
  double w = 0.25 * std::max(std::abs(center), 1.0);
  for (int attempt = 0;; ++attempt) {
    try {
      return shoot_refine(params, {std::max(0.0, center - w), center + w}, icfg);
    } catch (const SolverError& e) {
      if (e.code() != ErrorCode::BadBracket || attempt == 3) throw;
      w *= 2.0;
    }
  }
}

RunSummary run_solve(const Problem& prob, const Options& opt) {
  RunSummary sum;
  sum.hartmann = prob.hartmann;
  sum.params = prob.exact;
  sum.d = opt.d;
  sum.D_max = opt.D_max;
  const HankelConfig hcfg = hankel_config(opt);
  const IntegratorConfig icfg = integrator_config(opt);

  sum.ansatz1 = try_ansatz([&] { return solve_n1(prob.model); });
  sum.ansatz2 = try_ansatz([&] { return solve_n2(prob.model); });
  if (opt.N > 0) {
    sum.ansatzN_order = opt.N;
    sum.ansatzN = try_ansatz([&] { return solve_general(prob.model, opt.N); });
  }

  // The Hankel sequence and the shooting cross-check are independent.
  auto hankel = std::async(std::launch::async, [&] { return alpha_sequence(prob.exact, hcfg); });
  std::optional<double> center;
  if (sum.ansatz2.solution) {
    center = sum.ansatz2.solution->alpha_est;
  } else if (sum.ansatz1.solution) {
    center = sum.ansatz1.solution->alpha_est;
  }
  auto shooting = std::async(std::launch::async, [&]() -> std::optional<double> {
    if (!center) throw SolverError(ErrorCode::ComplexDecay, "no ansatz estimate to bracket from");
    return shoot_from_ansatz(prob.model, *center, icfg);
  });

  try {
    const RootSequence seq = hankel.get();
    sum.alpha_hankel = seq.alpha_star;
    sum.hankel_converged = seq.converged;
    sum.hankel_D_reached = seq.D_reached;
    sum.hankel_skipped = seq.skipped;
    std::size_t multiple = 0;
    for (const auto& r : seq.roots) multiple += r.sign_changes > 1;
    if (multiple > 0) {
      sum.warnings.push_back("MultipleRoots: " + std::to_string(multiple) +
                             " determinants had several sign changes; nearest root taken");
    }
  } catch (const SolverError& e) {
    sum.hankel_error = status_token(e);
  }
  try {
    sum.alpha_shooting = shooting.get();
  } catch (const SolverError& e) {
    sum.shooting_error = status_token(e);
  }
  if (sum.alpha_hankel && sum.alpha_shooting &&
      std::abs(*sum.alpha_hankel - *sum.alpha_shooting) > 1e-6) {
    sum.warnings.push_back("hankel and shooting estimates differ by more than 1e-6");
  }

  const std::optional<double> alpha = sum.alpha_hankel ? sum.alpha_hankel : sum.alpha_shooting;
  if (alpha) {
    try {
      const Profile profile = integrate(prob.model, *alpha, icfg);
      sum.eta_max = profile.eta_max;
      sum.monotone = monotonicity_report(profile).monotone;
      auto maxdev = [&](const AnsatzReport& a) -> std::optional<double> {
        if (!a.solution) return std::nullopt;
        double dev = 0.0;
        for (const auto& row : profile.rows) {
          dev = std::max(dev, std::abs(row.fp - eval_ansatz(*a.solution, row.eta, 1)));
        }
        return dev;
      };
      sum.maxdev_ansatz1 = maxdev(sum.ansatz1);
      sum.maxdev_ansatz2 = maxdev(sum.ansatz2);
    } catch (const SolverError& e) {
      sum.warnings.push_back("profile: " + std::string(e.what()));
    }
  }
  return sum;
}

void put_ansatz(Json& j, const std::string& key, const AnsatzReport& a) {
  if (!a.solution) {
    j[key + "_error"] = a.error;
    return;
  }
  j[key + "_beta"] = number(a.solution->beta);
  Json b = Json::array();
  for (double x : a.solution->b) b.push_back(number(x));
  j[key + "_b"] = b;
  j[key + "_alpha_est"] = number(a.solution->alpha_est);
}

Json to_json(const RunSummary& s) {
  Json j;
  j["schema"] = 1;
  j["command"] = "solve";
  j["param_hartmann"] = to_string(s.hartmann);
  j["param_stretching"] = to_string(s.params.m);
  j["param_suction"] = to_string(s.params.s);
  j["hankel_d"] = s.d;
  j["hankel_dmax"] = s.D_max;
  j["alpha_hankel"] = number(s.alpha_hankel);
  j["hankel_converged"] = s.hankel_converged;
  j["hankel_d_reached"] = s.hankel_D_reached;
  j["hankel_skipped"] = s.hankel_skipped;
  if (!s.hankel_error.empty()) j["hankel_error"] = s.hankel_error;
  j["alpha_shooting"] = number(s.alpha_shooting);
  if (!s.shooting_error.empty()) j["shooting_error"] = s.shooting_error;
  put_ansatz(j, "ansatz1", s.ansatz1);
  put_ansatz(j, "ansatz2", s.ansatz2);
  if (s.ansatzN_order) {
    j["ansatzn_order"] = *s.ansatzN_order;
    put_ansatz(j, "ansatzn", s.ansatzN);
  }
  j["eta_max"] = number(s.eta_max);
  j["maxdev_ansatz1"] = number(s.maxdev_ansatz1);
  j["maxdev_ansatz2"] = number(s.maxdev_ansatz2);
  j["monotone"] = s.monotone ? Json(*s.monotone) : Json(nullptr);
  j["warnings"] = s.warnings;
  return j;
}

// nlohmann's float printer is not always shortest; floats go through
// format_number so JSON and CSV share the 12-digit rendering.
void write_json(const Json& v, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (v.is_object()) {
    if (v.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (const auto& [k, e] : v.items()) {
      os << (first ? "" : ",\n") << pad << Json(k).dump() << ": ";
      write_json(e, os, indent + 2);
      first = false;
    }
    os << "\n" << std::string(static_cast<std::size_t>(indent), ' ') << "}";
  } else if (v.is_array()) {
    os << "[";
    bool first = true;
    for (const auto& e : v) {
      os << (first ? "" : ", ");
      write_json(e, os, indent);
      first = false;
    }
    os << "]";
  } else if (v.is_number_float()) {
    os << format_number(v.get<double>());
  } else {
    os << v.dump();
  }
}

std::string dump(const Json& v) {
  std::ostringstream os;
  write_json(v, os, 0);
  os << "\n";
  return os.str();
}

std::string csv_field(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_array()) {
    std::string joined;
    for (const auto& e : v) joined += (joined.empty() ? "" : ";") + csv_field(e);
    return "\"" + joined + "\"";
  }
  return v.dump();
}

// Writes to --out when given, else to out. Returns false when the file cannot
// be opened.
bool emit(const Options& opt, std::ostream& out, std::ostream& err, const std::string& text) {
  if (opt.out.empty()) {
    out << text;
    return true;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file || !(file << text) || !file.flush()) {
    err << "error: cannot write " << opt.out << "\n";
    return false;
  }
  return true;
}

int cmd_solve(const Options& opt, std::ostream& out, std::ostream& err) {
  const Problem prob = make_problem(opt.M, opt.m, opt.s);
  const RunSummary sum = run_solve(prob, opt);
  const Json j = to_json(sum);
  std::string text;
  if (opt.format == "csv") {
    text = "key,value\n";
    for (const auto& [k, v] : j.items()) text += k + "," + csv_field(v) + "\n";
  } else {
    text = dump(j);
  }
  if (!emit(opt, out, err, text)) return 1;
  return sum.hankel_converged ? 0 : 2;
}

int cmd_profile(const Options& opt, std::ostream& out, std::ostream& err) {
  const Problem prob = make_problem(opt.M, opt.m, opt.s);
  const IntegratorConfig icfg = integrator_config(opt);

  double alpha = 0.0;
  int code = 0;
  if (!opt.alpha.empty()) {
    alpha = to_double(parse_decimal(opt.alpha));
  } else {
    const RootSequence seq = alpha_sequence(prob.exact, hankel_config(opt));
    alpha = seq.alpha_star;
    if (!seq.converged) {
      err << "warning: Hankel sequence did not converge; using alpha_D at D = " << seq.D_reached
          << "\n";
      code = 2;
    }
  }

  const AnsatzReport a1 = try_ansatz([&] { return solve_n1(prob.model); });
  const AnsatzReport a2 = try_ansatz([&] { return solve_n2(prob.model); });
  const Profile profile = integrate(prob.model, alpha, icfg);

  auto ansatz_fp = [](const AnsatzReport& a, double eta) {
    return a.solution ? format_number(eval_ansatz(*a.solution, eta, 1)) : std::string();
  };
  std::string text;
  if (opt.format == "json") {
    Json j;
    j["schema"] = 1;
    j["command"] = "profile";
    j["alpha"] = number(alpha);
    Json rows = Json::array();
    for (const auto& r : profile.rows) {
      rows.push_back({{"eta", number(r.eta)},
                      {"fp_numeric", number(r.fp)},
                      {"fp_ansatz1", a1.solution ? number(eval_ansatz(*a1.solution, r.eta, 1)) : Json()},
                      {"fp_ansatz2", a2.solution ? number(eval_ansatz(*a2.solution, r.eta, 1)) : Json()}});
    }
    j["rows"] = rows;
    text = dump(j);
  } else {
    std::ostringstream os;
    os << "eta,fp_numeric,fp_ansatz1,fp_ansatz2\n";
    for (const auto& r : profile.rows) {
      os << format_number(r.eta) << ',' << format_number(r.fp) << ',' << ansatz_fp(a1, r.eta) << ','
         << ansatz_fp(a2, r.eta) << '\n';
    }
    text = os.str();
  }
  if (!emit(opt, out, err, text)) return 1;
  return code;
}

int cmd_scan(const Options& opt, bool dmax_given, std::ostream& out, std::ostream& err) {
  const Rational from = parse_decimal(opt.from);
  const Rational to = parse_decimal(opt.to);
  Options point = opt;
  if (!dmax_given) point.D_max = 20;

  std::ostringstream os;
  os << "param,value,alpha_hankel,hankel_converged,alpha_ansatz1,alpha_ansatz2,monotone,status\n";
  for (unsigned i = 0; i < opt.count; ++i) {
    Rational step(i, opt.count == 1 ? 1 : opt.count - 1);
    step.canonicalize();
    const Rational value = from + (to - from) * step;
    Problem prob = make_problem(opt.sweep == "M" ? "0" : opt.M, opt.sweep == "m" ? "0" : opt.m,
                                opt.sweep == "s" ? "0" : opt.s);
    if (opt.sweep == "M") {
      prob.hartmann = value;
      prob.exact.M2 = value * value;
      prob.model.M = to_double(value);
    } else if (opt.sweep == "m") {
      prob.exact.m = value;
      prob.model.m = to_double(value);
    } else {
      prob.exact.s = value;
      prob.model.s = to_double(value);
    }

    std::vector<std::string> status;
    std::string alpha_h, converged, mono;
    try {
      const RootSequence seq = alpha_sequence(prob.exact, hankel_config(point));
      alpha_h = format_number(seq.alpha_star);
      converged = seq.converged ? "true" : "false";
      try {
        const Profile profile = integrate(prob.model, seq.alpha_star, integrator_config(point));
        mono = monotonicity_report(profile).monotone ? "true" : "false";
      } catch (const SolverError& e) {
        status.push_back("profile=" + status_token(e));
      }
    } catch (const SolverError& e) {
      status.push_back("hankel=" + status_token(e));
    }
    const AnsatzReport a1 = try_ansatz([&] { return solve_n1(prob.model); });
    const AnsatzReport a2 = try_ansatz([&] { return solve_n2(prob.model); });
    if (!a1.solution) status.push_back("ansatz1=" + a1.error);
    if (!a2.solution) status.push_back("ansatz2=" + a2.error);

    std::string joined;
    for (const auto& s : status) joined += (joined.empty() ? "" : ";") + s;
    os << opt.sweep << ',' << format_number(to_double(value)) << ',' << alpha_h << ',' << converged
       << ',' << (a1.solution ? format_number(a1.solution->alpha_est) : "") << ','
       << (a2.solution ? format_number(a2.solution->alpha_est) : "") << ',' << mono << ','
       << (joined.empty() ? "ok" : joined) << '\n';
  }
  return emit(opt, out, err, os.str()) ? 0 : 1;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 12);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shrinking-sheet MHD boundary-value solver"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool params_required) {
    auto* M = sub->add_option("--M", opt.M, "Hartmann number (decimal)");
    auto* m = sub->add_option("--m", opt.m, "stretching parameter (decimal)");
    auto* s = sub->add_option("--s", opt.s, "suction parameter (decimal)");
    if (params_required) {
      M->required();
      m->required();
      s->required();
    }
    sub->add_option("--d", opt.d, "Hankel offset d")->check(CLI::PositiveNumber);
    sub->add_option("--Dmax", opt.D_max, "largest Hankel dimension")->check(CLI::Range(2u, 200u));
    sub->add_option("--tol", opt.tol, "bisection tolerance on alpha");
    sub->add_option("--eta-max", opt.eta_max, "integration end point, or 'auto' (10/beta)");
    sub->add_option("--stride", opt.stride, "output sampling interval in eta");
    sub->add_option("--out", opt.out, "write output to this file instead of stdout");
  };

  auto* solve = app.add_subcommand("solve", "alpha = f''(0) by Hankel-Pade, shooting and ansatz");
  add_common(solve, true);
  solve->add_option("--N", opt.N, "also solve the ansatz at this order")->check(CLI::PositiveNumber);
  solve->add_option("--format", opt.format, "json (default) or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* profile = app.add_subcommand("profile", "f'(eta): numeric, first and second order ansatz");
  add_common(profile, true);
  profile->add_option("--alpha", opt.alpha, "f''(0); computed by the Hankel sequence if omitted");
  profile->add_option("--format", opt.format, "csv (default) or json")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* scan = app.add_subcommand("scan", "sweep one parameter; one CSV row per point");
  add_common(scan, false);
  scan->add_option("--sweep", opt.sweep, "parameter to sweep")
      ->required()
      ->check(CLI::IsMember({"M", "m", "s"}));
  scan->add_option("--from", opt.from, "first sweep value")->required();
  scan->add_option("--to", opt.to, "last sweep value")->required();
  scan->add_option("--count", opt.count, "number of sweep points")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(opt, out, err);
    if (profile->parsed()) return cmd_profile(opt, out, err);
    for (const char* name : {"M", "m", "s"}) {
      const std::string& given = name == std::string("M") ? opt.M : name == std::string("m") ? opt.m : opt.s;
      if (opt.sweep != name && given.empty()) {
        err << "error: --" << name << " is required unless it is the swept parameter\n"
            << scan->help();
        return 1;
      }
    }
    if (opt.count == 0) {
      err << "error: empty sweep range (--count must be >= 1)\n" << scan->help();
      return 1;
    }
    return cmd_scan(opt, scan->get_option("--Dmax")->count() > 0, out, err);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    const auto code = e.code();
    return (code == ErrorCode::NotRepresentable || code == ErrorCode::InvalidArgument) ? 1 : 2;
  }
}

}  // namespace mhdflow::cli
