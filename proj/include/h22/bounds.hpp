#pragma once

#include <vector>

namespace h22 {

// Parameters of the rigorous decay envelopes. c_d = 2d - 1 bounds the
// self-avoiding-walk growth; c0 is the envelope prefactor.
struct BoundParams {
  int d = 1;
  double beta = 1.0;
  double c0 = 1.0;

  double c_d() const { return 2.0 * d - 1.0; }

  // Prefactor produced by the convergent geometric path sum:
  // 2 e^{1 + 2 beta} / (1 - r). Requires r < 1.
  static BoundParams with_default_prefactor(int d, double beta);
};

// One-site integral I(beta) = sqrt(beta) int e^{-beta(cosh t - 1)} dt / sqrt(2 pi).
// Adaptive quadrature, absolute error below 1e-10. Always < 1.
double one_site_integral(double beta);

// Per-step cost of the path sum: r = I(beta) e^{beta (c_d - 1)} c_d.
double decay_ratio(int d, double beta);

// Critical coupling: the root of r(beta) = 1. Infinite in one dimension
// (r = I < 1 for every beta); for d > 1 found by bisection on [1e-8, 1].
struct CriticalBeta {
  bool is_infinite = false;
  double value = 0.0;
};
CriticalBeta critical_beta(int d);

// Envelope for the two-contact correlation: c0 (1/eps_x + 1/eps_y) r^dist.
// Refuses when r >= 1 (coupling at or above critical).
double correlation_envelope(const BoundParams& bp, double eps_x, double eps_y,
                            double dist);

// Envelope for the single-pinning observable <e^{t_x/2}>: c0 r^dist.
double single_pinning_envelope(const BoundParams& bp, double dist);

struct DecayPoint {
  double distance = 0.0;
  double value = 0.0;
  double std_error = 0.0;
};

struct DecayFit {
  double rate = 0.0;       // positive for decaying data
  double intercept = 0.0;  // log value at distance 0
  double rate_std_error = 0.0;
  int n_used = 0;
  int n_excluded = 0;  // points with non-positive value
};

// Weighted least squares of log(value) against distance, weights
// (value/std_error)^2; unweighted when any std_error is non-positive.
// Needs at least 3 usable points at 2 distinct distances.
DecayFit fit_decay_rate(const std::vector<DecayPoint>& points);

}  // namespace h22
