#include "mhdflow/ivp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "mhdflow/error.hpp"

namespace mhdflow {

namespace {

constexpr double kBlowup = 1e12;
constexpr double kExtremumResolution = 1e-8;
constexpr double kShootWidth = 1e-8;

State axpy(const State& y, double h, const State& k) {
  return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]};
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// Called after every accepted step with (eta_prev, y_prev, eta, y). Returning
// true stops the march early.
using StepObserver = std::function<bool(double, const State&, double, const State&)>;

class Marcher {
 public:
  Marcher(const ModelParams& params, const IntegratorConfig& cfg)
      : params_(params), cfg_(cfg), h_(cfg.step) {}

  // Advances y from eta0 to eta1. Returns false if the observer stopped early,
  // in which case eta0/y hold the stopping point.
  bool march(double& eta0, State& y, double eta1, const StepObserver& observe) {
    while (eta0 < eta1) {
      const double remaining = eta1 - eta0;
      double eta_next;
      State y_next;
      if (remaining < 1e-12 * std::max(1.0, std::abs(eta1))) {
        // Rounding sliver between a sample point and the end point.
        y_next = rk4_step(y, remaining);
        eta_next = eta1;
      } else if (cfg_.method == Method::RK4Fixed) {
        const double h = std::min(cfg_.step, remaining);
        y_next = rk4_step(y, h);
        eta_next = (h == remaining) ? eta1 : eta0 + h;
      } else {
        const double h = adaptive_step(eta0, y, remaining, y_next);
        eta_next = (h == remaining) ? eta1 : eta0 + h;
      }
      check(eta_next, y_next);
      const bool stop = observe && observe(eta0, y, eta_next, y_next);
      eta0 = eta_next;
      y = y_next;
      if (stop) return false;
    }
    return true;
  }

 private:
  State f(const State& y) const { return rhs(params_, y); }

  void check(double eta, const State& y) const {
    if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || !std::isfinite(y[2]) ||
        std::abs(y[2]) > kBlowup) {
      throw SolverError(ErrorCode::Blowup, "|f''| exceeded 1e12 at eta = " + std::to_string(eta));
    }
  }

  State rk4_step(const State& y, double h) const {
    const State k1 = f(y);
    const State k2 = f(axpy(y, 0.5 * h, k1));
    const State k3 = f(axpy(y, 0.5 * h, k2));
    const State k4 = f(axpy(y, h, k3));
    State out;
    for (int i = 0; i < 3; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
  }

  // One accepted Dormand-Prince step of at most max_h; returns the size taken.
  double adaptive_step(double eta, const State& y, double max_h, State& y_out) {
    double h = std::min(h_, max_h);
    for (;;) {
      if (h < 1e-14 * std::max(1.0, std::abs(eta))) {
        throw SolverError(ErrorCode::StepUnderflow,
                          "adaptive step underflow at eta = " + std::to_string(eta));
      }
      const State k1 = f(y);
      State t;
      for (int i = 0; i < 3; ++i) t[i] = y[i] + h * a21 * k1[i];
      const State k2 = f(t);
      for (int i = 0; i < 3; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
      const State k3 = f(t);
      for (int i = 0; i < 3; ++i) t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      const State k4 = f(t);
      for (int i = 0; i < 3; ++i)
        t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      const State k5 = f(t);
      for (int i = 0; i < 3; ++i)
        t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      const State k6 = f(t);
      State y5;
      for (int i = 0; i < 3; ++i)
        y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
      const State k7 = f(y5);

      double err = 0.0;
      bool finite = true;
      for (int i = 0; i < 3; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                              e7 * k7[i]);
        const double scale = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        finite = finite && std::isfinite(e);
        err = std::max(err, std::abs(e) / scale);
      }
      if (finite && err <= 1.0) {
        const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        // Clipped final steps should not shrink the step carried forward.
        if (h < max_h || h == h_) h_ = h * grow;
        y_out = y5;
        return h;
      }
      const double shrink = finite ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.5) : 0.1;
      h *= shrink;
      h_ = h;
    }
  }

  ModelParams params_;
  IntegratorConfig cfg_;
  double h_;
};

struct Crossing {
  double eta_lo;
  State y_lo;
  double eta_hi;
};

// Bisects on eta for the zero of f'' inside (eta_lo, eta_hi).
Extremum refine_extremum(const ModelParams& params, const IntegratorConfig& cfg,
                         const Crossing& c) {
  IntegratorConfig fine = cfg;
  fine.step = std::min(cfg.step, (c.eta_hi - c.eta_lo) / 8.0);
  const int s_lo = sign_of(c.y_lo[2]);
  double lo = c.eta_lo;
  State y_lo = c.y_lo;
  double hi = c.eta_hi;
  while (hi - lo > kExtremumResolution) {
    const double mid = 0.5 * (lo + hi);
    double eta = lo;
    State y = y_lo;
    Marcher(params, fine).march(eta, y, mid, nullptr);
    if (sign_of(y[2]) == s_lo) {
      lo = mid;
      y_lo = y;
    } else {
      hi = mid;
    }
  }
  double eta = lo;
  State y = y_lo;
  Marcher(params, fine).march(eta, y, 0.5 * (lo + hi), nullptr);
  return {0.5 * (lo + hi), y[1]};
}

std::vector<double> sample_points(double eta_max, double stride) {
  std::vector<double> pts;
  for (long k = 0;; ++k) {
    const double eta = static_cast<double>(k) * stride;
    if (eta > eta_max * (1.0 + 1e-12) + 1e-15) break;
    pts.push_back(eta);
  }
  return pts;
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(step > 0.0)) throw SolverError(ErrorCode::InvalidArgument, "step must be positive");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "tolerances must be positive");
  }
  if (eta_max && !(*eta_max > 0.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "eta_max must be positive");
  }
  if (!(sample_stride > 0.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "sample stride must be positive");
  }
}

State rhs(const ModelParams& params, const State& y) {
  return {y[1], y[2], params.M * params.M * y[1] + y[1] * y[1] - params.m * y[0] * y[2]};
}

double resolve_eta_max(const ModelParams& params, const IntegratorConfig& cfg) {
  if (cfg.eta_max) return *cfg.eta_max;
  return 10.0 / solve_n1(params).beta;
}

Profile integrate(const ModelParams& params, double alpha, const IntegratorConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(alpha)) throw SolverError(ErrorCode::InvalidArgument, "alpha must be finite");
  Profile out;
  out.alpha_used = alpha;
  out.eta_max = resolve_eta_max(params, cfg);

  std::vector<Crossing> crossings;
  auto observe = [&](double e0, const State& y0, double e1, const State& y1) {
    const int s0 = sign_of(y0[2]);
    const int s1 = sign_of(y1[2]);
    if (s0 != 0 && s1 != 0 && s0 != s1) crossings.push_back({e0, y0, e1});
    return false;
  };

  Marcher marcher(params, cfg);
  double eta = 0.0;
  State y{params.s, -1.0, alpha};
  out.rows.push_back({0.0, y[0], y[1], y[2]});
  const auto pts = sample_points(out.eta_max, cfg.sample_stride);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    marcher.march(eta, y, pts[k], observe);
    out.rows.push_back({pts[k], y[0], y[1], y[2]});
  }
  if (eta < out.eta_max) marcher.march(eta, y, out.eta_max, observe);
  out.tail_fp = y[1];

  for (const auto& c : crossings) out.extrema.push_back(refine_extremum(params, cfg, c));
  return out;
}

int divergence_side(const ModelParams& params, double alpha, const IntegratorConfig& cfg,
                    double horizon) {
  int side = 0;
  auto observe = [&](double, const State&, double, const State& y) {
    if (y[1] > 0.0) {
      side = 1;
    } else if (y[2] < 0.0) {
      side = -1;
    }
    return side != 0;
  };
  double eta = 0.0;
  State y{params.s, -1.0, alpha};
  if (alpha < 0.0) return -1;
  try {
    Marcher(params, cfg).march(eta, y, horizon, observe);
  } catch (const SolverError& e) {
    if (e.code() != ErrorCode::Blowup) throw;
    // Blowup without a recorded event: the last finite state shows the side.
    return side != 0 ? side : (y[1] > 0.0 ? 1 : -1);
  }
  return side;
}

double shoot_refine(const ModelParams& params, std::pair<double, double> bracket,
                    const IntegratorConfig& cfg) {
  cfg.validate();
  auto [lo, hi] = bracket;
  if (lo > hi) std::swap(lo, hi);
  const double horizon = 4.0 * resolve_eta_max(params, cfg);
  const int s_lo = divergence_side(params, lo, cfg, horizon);
  const int s_hi = divergence_side(params, hi, cfg, horizon);
  if (s_lo == 0) return lo;
  if (s_hi == 0) return hi;
  if (s_lo == s_hi) {
    throw SolverError(ErrorCode::BadBracket,
                      "both ends of [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "] diverge " + (s_lo > 0 ? "upward" : "downward"));
  }
  while (hi - lo > kShootWidth) {
    const double mid = 0.5 * (lo + hi);
    const int s = divergence_side(params, mid, cfg, horizon);
    if (s == 0) return mid;
    if (s == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

MonotonicityReport monotonicity_report(const Profile& profile) {
  if (profile.rows.empty()) throw SolverError(ErrorCode::InvalidArgument, "empty profile");
  MonotonicityReport rep;
  rep.extrema = profile.extrema;
  rep.fp_min = rep.fp_max = profile.rows.front().fp;
  double running_max = profile.rows.front().fp;
  for (std::size_t i = 1; i < profile.rows.size(); ++i) {
    const auto& a = profile.rows[i - 1];
    const auto& b = profile.rows[i];
    rep.fp_min = std::min(rep.fp_min, b.fp);
    rep.fp_max = std::max(rep.fp_max, b.fp);
    if (b.fp < running_max - 1e-9) rep.monotone = false;
    running_max = std::max(running_max, b.fp);

    const int sa = sign_of(a.fpp);
    const int sb = sign_of(b.fpp);
    if (sa != 0 && sb != 0 && sa != sb) {
      const double t = a.fpp / (a.fpp - b.fpp);
      const double eta = a.eta + t * (b.eta - a.eta);
      const bool known = std::any_of(rep.extrema.begin(), rep.extrema.end(), [&](const Extremum& e) {
        return e.eta >= a.eta && e.eta <= b.eta;
      });
      if (!known) rep.extrema.push_back({eta, a.fp + t * (b.fp - a.fp)});
    }
  }
  std::sort(rep.extrema.begin(), rep.extrema.end(),
            [](const Extremum& x, const Extremum& y) { return x.eta < y.eta; });
  if (!rep.extrema.empty()) rep.monotone = false;
  return rep;
}

Profile sample_ansatz(const AnsatzSolution& sol, double eta_max, double stride) {
  if (!(eta_max > 0.0) || !(stride > 0.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "eta_max and stride must be positive");
  }
  Profile out;
  out.alpha_used = sol.alpha_est;
  out.eta_max = eta_max;
  for (double eta : sample_points(eta_max, stride)) {
    out.rows.push_back(
        {eta, eval_ansatz(sol, eta, 0), eval_ansatz(sol, eta, 1), eval_ansatz(sol, eta, 2)});
  }
  out.tail_fp = eval_ansatz(sol, eta_max, 1);
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    double lo = out.rows[i - 1].eta;
    double hi = out.rows[i].eta;
    const int s_lo = sign_of(out.rows[i - 1].fpp);
    const int s_hi = sign_of(out.rows[i].fpp);
    if (s_lo == 0 || s_hi == 0 || s_lo == s_hi) continue;
    while (hi - lo > kExtremumResolution) {
      const double mid = 0.5 * (lo + hi);
      if (sign_of(eval_ansatz(sol, mid, 2)) == s_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double eta = 0.5 * (lo + hi);
    out.extrema.push_back({eta, eval_ansatz(sol, eta, 1)});
  }
  return out;
}

}  // namespace mhdflow
