#pragma once

#include <vector>

#include "h22/combinatorics.hpp"
#include "h22/model.hpp"

namespace h22 {

// Composite Gauss-Legendre tensor grid: each free field integrated over
// [-half_width, half_width] with `panels` uniform panels of `order` nodes.
struct QuadratureSpec {
  double half_width = 40.0;
  int panels = 24;
  int order = 16;

  // Conservative defaults per scheme: tails close double-exponentially, so
  // half_width 40 covers any realistic pinning; single-pinning multi-site
  // lattices decay only through the cosh gradient and get 60.
  static QuadratureSpec recommended(const ModelParams& p);
};

// Partition function by tensor quadrature; converges to 1 on refinement for
// every beta, eps and boundary condition (the model's internal supersymmetry).
// Cost is (panels*order)^N, so lattices above 4 sites are refused.
double partition_function(const ModelParams& p, const QuadratureSpec& spec);

// <f> under the measure. Because the measure is normalized, no division is
// performed unless `normalize` asks for the computed-Z diagnostic mode.
// Correlation observables require both sites pinned.
double expectation(const ModelParams& p, const QuadratureSpec& spec,
                   const Observable& obs, bool normalize = false);

// Partition function over the complement of the path, with the path fields
// frozen at t_path: integrates exp(-F_complement - M_complement - F_boundary)
// times sqrt(det of the path-deleted kernel). Equals 1 when the path covers
// the lattice, and exactly 1 when t_path is identically zero.
double conditioned_partition(const ModelParams& p, const QuadratureSpec& spec,
                             const Path& gamma, const std::vector<double>& t_path);

// Translation bound on the conditioned partition function:
//   exp(beta sum_k d_k (1 - e^{t_k - t*})) * exp(sum_j eps_j (1 - e^{-t*}))
// with t* = max(0, max_k t_k), d_k = bonds from path site k to the complement,
// and the eps sum over complement sites.
double conditioned_partition_bound(const ModelParams& p, const Path& gamma,
                                   const std::vector<double>& t_path);

// exp(-eps_min_positive * (cosh(half_width) - 1)): size of the neglected tail
// in the pinned directions; reported alongside quadrature results.
double quadrature_tail_estimate(const ModelParams& p, const QuadratureSpec& spec);

}  // namespace h22
