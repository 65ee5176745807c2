#include "h22/model.hpp"

#include <cmath>
#include <stdexcept>

namespace h22 {

namespace {

void check_eps(double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("pinning weights must be >= 0");
}

void check_config(const ModelParams& p, const FieldConfig& t) {
  if (static_cast<int>(t.size()) != p.lattice.n_sites())
    throw std::invalid_argument("field configuration size mismatch");
  for (double v : t)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite field value");
}

}  // namespace

PinningScheme PinningScheme::uniform(double eps) {
  check_eps(eps);
  return PinningScheme(Mode::Uniform, 0, eps, 0, eps);
}

PinningScheme PinningScheme::two_point(int x, double eps_x, int y, double eps_y) {
  check_eps(eps_x);
  check_eps(eps_y);
  if (x == y) throw std::invalid_argument("two-point pinning needs distinct sites");
  return PinningScheme(Mode::TwoPoint, x, eps_x, y, eps_y);
}

PinningScheme PinningScheme::single(int site, double eps) {
  check_eps(eps);
  return PinningScheme(Mode::Single, site, eps, site, 0.0);
}

double PinningScheme::eps(int site) const {
  switch (mode_) {
    case Mode::Uniform:
      return eps_a_;
    case Mode::TwoPoint:
      if (site == site_a_) return eps_a_;
      if (site == site_b_) return eps_b_;
      return 0.0;
    case Mode::Single:
      return site == site_a_ ? eps_a_ : 0.0;
  }
  return 0.0;
}

std::vector<double> PinningScheme::eps_vector(int n_sites) const {
  std::vector<double> v(n_sites);
  for (int j = 0; j < n_sites; ++j) v[j] = eps(j);
  return v;
}

std::vector<int> PinningScheme::pinned_sites(int n_sites) const {
  std::vector<int> out;
  for (int j = 0; j < n_sites; ++j)
    if (eps(j) > 0.0) out.push_back(j);
  return out;
}

bool PinningScheme::any_positive() const {
  switch (mode_) {
    case Mode::Uniform:
      return eps_a_ > 0.0;
    case Mode::TwoPoint:
      return eps_a_ > 0.0 || eps_b_ > 0.0;
    case Mode::Single:
      return eps_a_ > 0.0;
  }
  return false;
}

double PinningScheme::total(int n_sites) const {
  switch (mode_) {
    case Mode::Uniform:
      return eps_a_ * n_sites;
    case Mode::TwoPoint:
      return eps_a_ + eps_b_;
    case Mode::Single:
      return eps_a_;
  }
  return 0.0;
}

double PinningScheme::min_positive() const {
  double m = 0.0;
  auto fold = [&m](double e) {
    if (e > 0.0 && (m == 0.0 || e < m)) m = e;
  };
  fold(eps_a_);
  if (mode_ == Mode::TwoPoint) fold(eps_b_);
  return m;
}

void PinningScheme::check_sites(int n_sites) const {
  auto in_range = [n_sites](int s) { return s >= 0 && s < n_sites; };
  if (!in_range(site_a_) || (mode_ == Mode::TwoPoint && !in_range(site_b_)))
    throw std::invalid_argument("pinning site out of range");
}

ModelParams::ModelParams(double beta_in, Lattice lattice_in, PinningScheme pinning_in)
    : beta(beta_in), lattice(std::move(lattice_in)), pinning(pinning_in) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  pinning.check_sites(lattice.n_sites());
}

double kinetic_action(const ModelParams& p, const FieldConfig& t) {
  check_config(p, t);
  double s = 0.0;
  for (auto [j, k] : p.lattice.bonds()) s += std::cosh(t[j] - t[k]) - 1.0;
  return p.beta * s;
}

double mass_action(const ModelParams& p, const FieldConfig& t) {
  check_config(p, t);
  double s = 0.0;
  for (int j = 0; j < p.lattice.n_sites(); ++j) {
    const double e = p.pinning.eps(j);
    if (e > 0.0) s += e * (std::cosh(t[j]) - 1.0);
  }
  return s;
}

Matrix weight_matrix(const ModelParams& p, const FieldConfig& t) {
  check_config(p, t);
  const int n = p.lattice.n_sites();
  Matrix d(n);
  for (auto [j, k] : p.lattice.bonds()) {
    d(j, k) -= p.beta;
    d(k, j) -= p.beta;
    d(j, j) += p.beta * std::exp(t[k] - t[j]);
    d(k, k) += p.beta * std::exp(t[j] - t[k]);
  }
  for (int j = 0; j < n; ++j) d(j, j) += p.pinning.eps(j) * std::exp(-t[j]);
  return d;
}

Matrix conductance_matrix(const ModelParams& p, const FieldConfig& t) {
  check_config(p, t);
  const int n = p.lattice.n_sites();
  Matrix a(n);
  for (auto [j, k] : p.lattice.bonds()) {
    const double w = p.beta * std::exp(t[j] + t[k]);
    a(j, k) -= w;
    a(k, j) -= w;
    a(j, j) += w;
    a(k, k) += w;
  }
  for (int j = 0; j < n; ++j) a(j, j) += p.pinning.eps(j) * std::exp(t[j]);
  return a;
}

std::optional<WeightEval> evaluate_weight(const ModelParams& p, const FieldConfig& t) {
  if (!p.pinning.any_positive()) return std::nullopt;  // kernel singular by symmetry
  auto f = factor(weight_matrix(p, t));
  if (!f) return std::nullopt;
  const double lw = -kinetic_action(p, t) - mass_action(p, t) + 0.5 * f->logdet();
  if (!std::isfinite(lw)) return std::nullopt;
  return WeightEval{std::move(*f), lw};
}

std::optional<double> log_weight(const ModelParams& p, const FieldConfig& t) {
  auto ev = evaluate_weight(p, t);
  if (!ev) return std::nullopt;
  return ev->log_weight;
}

}  // namespace h22
