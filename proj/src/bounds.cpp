#include "h22/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "h22/quadrature.hpp"

namespace h22 {

double one_site_integral(double beta) {
  if (!(beta > 0.0)) throw std::domain_error("one_site_integral: beta must be positive");
  // Truncate where beta(cosh t - 1) = 52; the remainder is below e^-52.
  const double cut = std::acosh(1.0 + 52.0 / beta);
  auto f = [beta](double t) { return std::exp(-beta * (std::cosh(t) - 1.0)); };
  const double integral = 2.0 * adaptive_simpson(f, 0.0, cut, 1e-12);
  return std::sqrt(beta / (2.0 * M_PI)) * integral;
}

double decay_ratio(int d, double beta) {
  if (d < 1) throw std::domain_error("dimension must be >= 1");
  const double c_d = 2.0 * d - 1.0;
  return one_site_integral(beta) * std::exp(beta * (c_d - 1.0)) * c_d;
}

CriticalBeta critical_beta(int d) {
  if (d < 1) throw std::domain_error("dimension must be >= 1");
  if (d == 1) return {true, 0.0};  // r = I < 1 for every beta
  double lo = 1e-8, hi = 1.0;
  double flo = decay_ratio(d, lo) - 1.0;
  double fhi = decay_ratio(d, hi) - 1.0;
  if (!(flo < 0.0) || !(fhi > 0.0))
    throw std::runtime_error("critical_beta: bracketing failure on [1e-8, 1]");
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (decay_ratio(d, mid) - 1.0 < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return {false, 0.5 * (lo + hi)};
}

BoundParams BoundParams::with_default_prefactor(int d, double beta) {
  const double r = decay_ratio(d, beta);
  if (!(r < 1.0))
    throw std::domain_error("decay ratio >= 1: no envelope at this coupling");
  BoundParams bp;
  bp.d = d;
  bp.beta = beta;
  bp.c0 = 2.0 * std::exp(1.0 + 2.0 * beta) / (1.0 - r);
  return bp;
}

double correlation_envelope(const BoundParams& bp, double eps_x, double eps_y,
                            double dist) {
  if (!(eps_x > 0.0 && eps_y > 0.0))
    throw std::domain_error("correlation envelope needs positive pinning at both sites");
  const double r = decay_ratio(bp.d, bp.beta);
  if (!(r < 1.0))
    throw std::domain_error("decay ratio >= 1: no envelope at this coupling");
  return bp.c0 * (1.0 / eps_x + 1.0 / eps_y) * std::pow(r, dist);
}

double single_pinning_envelope(const BoundParams& bp, double dist) {
  const double r = decay_ratio(bp.d, bp.beta);
  if (!(r < 1.0))
    throw std::domain_error("decay ratio >= 1: no envelope at this coupling");
  return bp.c0 * std::pow(r, dist);
}

DecayFit fit_decay_rate(const std::vector<DecayPoint>& points) {
  std::vector<DecayPoint> usable;
  int excluded = 0;
  bool weighted = true;
  for (const DecayPoint& p : points) {
    if (!(p.value > 0.0)) {
      ++excluded;
      continue;
    }
    if (!(p.std_error > 0.0)) weighted = false;
    usable.push_back(p);
  }
  if (usable.size() < 3)
    throw std::invalid_argument("fit_decay_rate: need at least 3 points with positive value");

  double S = 0.0, Sx = 0.0, Sy = 0.0, Sxx = 0.0, Sxy = 0.0;
  for (const DecayPoint& p : usable) {
    const double y = std::log(p.value);
    const double sig = p.std_error / p.value;  // error of log(value)
    const double w = weighted ? 1.0 / (sig * sig) : 1.0;
    S += w;
    Sx += w * p.distance;
    Sy += w * y;
    Sxx += w * p.distance * p.distance;
    Sxy += w * p.distance * y;
  }
  const double delta = S * Sxx - Sx * Sx;
  if (!(delta > 0.0))
    throw std::invalid_argument("fit_decay_rate: need at least 2 distinct distances");

  const double slope = (S * Sxy - Sx * Sy) / delta;
  const double intercept = (Sxx * Sy - Sx * Sxy) / delta;
  double var_slope = S / delta;
  if (!weighted) {
    // scale by the residual variance when no per-point errors were given
    double rss = 0.0;
    for (const DecayPoint& p : usable) {
      const double resid = std::log(p.value) - (intercept + slope * p.distance);
      rss += resid * resid;
    }
    const int dof = static_cast<int>(usable.size()) - 2;
    var_slope *= dof > 0 ? rss / dof : 0.0;
  }

  DecayFit fit;
  fit.rate = -slope;
  fit.intercept = intercept;
  fit.rate_std_error = std::sqrt(var_slope);
  fit.n_used = static_cast<int>(usable.size());
  fit.n_excluded = excluded;
  return fit;
}

}  // namespace h22
