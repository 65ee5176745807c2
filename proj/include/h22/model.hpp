#pragma once

#include <optional>
#include <vector>

#include "h22/lattice.hpp"
#include "h22/linalg.hpp"

namespace h22 {

// One real horospherical field value t_j per site.
using FieldConfig = std::vector<double>;

// Site mass assignment eps_j >= 0. The measure only needs eps_j > 0 at one
// site; schemes with eps identically zero are constructible (the conditioned
// computations use them) and are rejected at weight-evaluation time.
class PinningScheme {
 public:
  enum class Mode { Uniform, TwoPoint, Single };

  static PinningScheme uniform(double eps);
  static PinningScheme two_point(int x, double eps_x, int y, double eps_y);
  static PinningScheme single(int site, double eps);

  Mode mode() const { return mode_; }
  double eps(int site) const;
  std::vector<double> eps_vector(int n_sites) const;
  std::vector<int> pinned_sites(int n_sites) const;
  bool any_positive() const;
  double total(int n_sites) const;
  // Hypothesis of the two-contact decay bound: sum_j eps_j <= 1.
  bool sum_condition_holds(int n_sites) const { return total(n_sites) <= 1.0; }
  // Smallest strictly positive eps (0 if none); sets the quadrature tails.
  double min_positive() const;

  int site_a() const { return site_a_; }
  int site_b() const { return site_b_; }
  double eps_a() const { return eps_a_; }
  double eps_b() const { return eps_b_; }

  void check_sites(int n_sites) const;

 private:
  PinningScheme(Mode mode, int a, double ea, int b, double eb)
      : mode_(mode), site_a_(a), site_b_(b), eps_a_(ea), eps_b_(eb) {}

  Mode mode_;
  int site_a_ = 0, site_b_ = 0;
  double eps_a_ = 0.0, eps_b_ = 0.0;
};

struct ModelParams {
  ModelParams(double beta_in, Lattice lattice_in, PinningScheme pinning_in);

  double beta;
  Lattice lattice;
  PinningScheme pinning;
};

// Kinetic action F = beta sum_{bonds (j,k)} (cosh(t_j - t_k) - 1).
double kinetic_action(const ModelParams& p, const FieldConfig& t);

// Mass action M = sum_j eps_j (cosh t_j - 1).
double mass_action(const ModelParams& p, const FieldConfig& t);

// The positive definite kernel whose square-root determinant enters the
// sampling weight; its inverse is the correlation observable. Off-diagonal
// -beta per bond, diagonal beta sum_{k~j} e^{t_k - t_j} + eps_j e^{-t_j}.
Matrix weight_matrix(const ModelParams& p, const FieldConfig& t);

// Graph Laplacian of the edge conductances beta e^{t_i + t_j} plus the site
// terms eps_i e^{t_i}; equals diag(e^t) * weight_matrix * diag(e^t).
Matrix conductance_matrix(const ModelParams& p, const FieldConfig& t);

struct WeightEval {
  SpdFactor factor;   // Cholesky factor of the weight matrix
  double log_weight;  // -F - M + (1/2) logdet
};

// Log unnormalized density of the measure with respect to prod dt_j/sqrt(2 pi).
// nullopt when the kernel is not positive definite (eps identically zero, or
// numerical breakdown at extreme fields).
std::optional<WeightEval> evaluate_weight(const ModelParams& p, const FieldConfig& t);
std::optional<double> log_weight(const ModelParams& p, const FieldConfig& t);

// Observables of the measure.
struct Observable {
  enum class Kind { Correlation, ExpHalfT };
  Kind kind = Kind::Correlation;
  int x = 0;
  int y = 0;

  static Observable correlation(int x, int y) { return {Kind::Correlation, x, y}; }
  static Observable exp_half_t(int x) { return {Kind::ExpHalfT, x, x}; }
};

}  // namespace h22
