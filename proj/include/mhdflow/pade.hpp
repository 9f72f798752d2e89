#pragma once

#include <span>
#include <vector>

namespace mhdflow {

/// [L/K] rational approximant num/den with den[0] = 1.
struct PadeApproximant {
  std::vector<double> num;  // degree L
  std::vector<double> den;  // degree K
};

/// Builds the [L/K] approximant of a power series. The denominator solves the
/// K x K Toeplitz system that cancels orders L+1..L+K; the numerator follows
/// by convolution. Throws DegenerateSystem when the reciprocal condition
/// estimate of that system is below 1e-13, InvalidArgument when fewer than
/// L+K+1 coefficients are supplied.
PadeApproximant pade(std::span<const double> series, unsigned L, unsigned K);

/// num(eta) / den(eta). Throws PoleNear when |den| < 1e-12 |num|.
double pade_eval(const PadeApproximant& p, double eta);

}  // namespace mhdflow
