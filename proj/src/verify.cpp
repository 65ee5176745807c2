#include "h22/verify.hpp"

#include <cmath>
#include <random>

#include "h22/bounds.hpp"
#include "h22/combinatorics.hpp"
#include "h22/exact.hpp"
#include "h22/lattice.hpp"
#include "h22/linalg.hpp"
#include "h22/model.hpp"
#include "h22/quadrature.hpp"

namespace h22 {

namespace {

double rel_err(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

// Signed cofactor route to (M^{-1})_{xy} det M, independent of the walk sum.
double adjugate_entry(const Matrix& m, int x, int y) {
  const int n = m.size();
  std::vector<int> keep_r, keep_c;
  for (int i = 0; i < n; ++i) {
    if (i != y) keep_r.push_back(i);
    if (i != x) keep_c.push_back(i);
  }
  Matrix sub(n - 1);
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) sub(i, j) = m(keep_r[i], keep_c[j]);
  const double sign = ((x + y) % 2 == 0) ? 1.0 : -1.0;
  return sign * lu_det(std::move(sub));
}

FieldConfig random_field(std::mt19937_64& rng, int n, double sigma) {
  std::normal_distribution<double> gauss(0.0, sigma);
  FieldConfig t(n);
  for (double& v : t) v = gauss(rng);
  return t;
}

}  // namespace

SuiteResult suite_normalization(bool quick) {
  struct Instance {
    ModelParams params;
    QuadratureSpec spec;
    double tol;
  };

  const QuadratureSpec small{40.0, 24, 16};
  const QuadratureSpec three{16.0, 16, 16};
  const QuadratureSpec three_quick{14.0, 12, 12};
  const QuadratureSpec s3 = quick ? three_quick : three;

  Lattice one({1}, Bc::Neumann);
  Lattice two({2}, Bc::Neumann);
  Lattice chain3({3}, Bc::Neumann);
  Lattice ring3({3}, Bc::Periodic);

  std::vector<Instance> instances;
  instances.push_back({ModelParams(1.0, one, PinningScheme::single(0, 1.0)), small, 1e-8});
  instances.push_back({ModelParams(5.0, one, PinningScheme::uniform(0.7)), small, 1e-8});
  instances.push_back({ModelParams(0.1, two, PinningScheme::uniform(0.4)), small, 1e-6});
  instances.push_back(
      {ModelParams(1.0, two, PinningScheme::two_point(0, 1.0, 1, 0.5)), small, 1e-6});
  instances.push_back({ModelParams(0.05, two, PinningScheme::single(0, 0.05)),
                       QuadratureSpec{30.0, 24, 16}, 1e-6});
  instances.push_back({ModelParams(0.05, ring3, PinningScheme::uniform(0.3)), s3, 1e-6});
  instances.push_back({ModelParams(1.0, chain3, PinningScheme::single(1, 1.0)), s3, 1e-6});
  instances.push_back(
      {ModelParams(5.0, chain3, PinningScheme::two_point(0, 1.0, 2, 1.0)), s3, 1e-6});

  SuiteResult r;
  r.name = "normalization (Z = 1)";
  for (const Instance& inst : instances) {
    const double z = partition_function(inst.params, inst.spec);
    const double err = std::abs(z - 1.0);
    r.max_error = std::max(r.max_error, err);
    if (err > inst.tol) ++r.violations;
    ++r.instances;
  }
  r.pass = r.violations == 0;
  r.note = "all three pinning schemes, beta in {0.05, 0.1, 1, 5}, 1-3 sites";
  return r;
}

SuiteResult suite_inverse_pinning_bound(std::uint64_t seed, long n_configs) {
  std::mt19937_64 rng(seed ^ 0x11d1ull);
  std::uniform_real_distribution<double> ubeta(0.05, 2.0);
  std::uniform_real_distribution<double> ueps(0.1, 2.0);

  std::vector<Lattice> lattices;
  lattices.emplace_back(std::vector<int>{6}, Bc::Neumann);
  lattices.emplace_back(std::vector<int>{3, 3}, Bc::Neumann);
  lattices.emplace_back(std::vector<int>{4}, Bc::Periodic);
  lattices.emplace_back(std::vector<int>{2, 3}, Bc::Neumann);

  SuiteResult r;
  r.name = "kernel inverse pinning bound";
  double worst_margin = -1e300;  // positive would be a violation
  for (long c = 0; c < n_configs; ++c) {
    const Lattice& lat = lattices[c % lattices.size()];
    const int n = lat.n_sites();
    PinningScheme pin = (c % 2 == 0)
                            ? PinningScheme::uniform(ueps(rng))
                            : PinningScheme::two_point(0, ueps(rng), n - 1, ueps(rng));
    ModelParams params(ubeta(rng), lat, pin);
    const FieldConfig t = random_field(rng, n, 2.0);
    auto f = factor(weight_matrix(params, t));
    if (!f) {
      ++r.violations;  // the kernel must be positive definite here
      continue;
    }
    const Matrix inv = f->inverse();
    for (int x = 0; x < n; ++x) {
      const double ex = params.pinning.eps(x);
      if (!(ex > 0.0)) continue;
      for (int y = 0; y < n; ++y) {
        const double ey = params.pinning.eps(y);
        if (!(ey > 0.0)) continue;
        const double bound = std::exp(t[x]) / ex + std::exp(t[y]) / ey;
        const double margin = (inv(x, y) - bound) / bound;
        worst_margin = std::max(worst_margin, margin);
        if (margin > 1e-12) ++r.violations;
      }
    }
    ++r.instances;
  }
  r.max_error = std::max(0.0, worst_margin);
  r.pass = r.violations == 0;
  r.note = "D^{-1}_{xy} <= e^{t_x}/eps_x + e^{t_y}/eps_y over all pinned pairs";
  return r;
}

SuiteResult suite_path_expansion(std::uint64_t seed, int n_random, int n_kernel) {
  std::mt19937_64 rng(seed ^ 0x2e2eull);
  std::uniform_real_distribution<double> uent(-1.0, 1.0);
  std::uniform_int_distribution<int> usize(2, 6);

  SuiteResult r;
  r.name = "walk-sum expansion of M^{-1} det M";
  const double tol = 1e-10;

  for (int c = 0; c < n_random; ++c) {
    const int n = usize(rng);
    Matrix m(n);
    // reroll nearly singular draws so the relative comparison stays meaningful
    for (int tries = 0; tries < 100; ++tries) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = uent(rng);
      if (std::abs(lu_det(m)) > 1e-2) break;
    }
    std::uniform_int_distribution<int> usite(0, n - 1);
    const int x = usite(rng);
    int y = usite(rng);
    if (y == x) y = (x + 1) % n;
    const double err = rel_err(path_expansion(m, x, y), adjugate_entry(m, x, y));
    r.max_error = std::max(r.max_error, err);
    if (err > tol) ++r.violations;
    ++r.instances;
  }

  Lattice grid({2, 3}, Bc::Neumann);
  std::uniform_real_distribution<double> ubeta(0.3, 1.5);
  std::uniform_real_distribution<double> ueps(0.2, 1.0);
  std::uniform_int_distribution<int> usite(0, grid.n_sites() - 1);
  for (int c = 0; c < n_kernel; ++c) {
    ModelParams params(ubeta(rng), grid, PinningScheme::uniform(ueps(rng)));
    const FieldConfig t = random_field(rng, grid.n_sites(), 1.0);
    const Matrix d = weight_matrix(params, t);
    auto f = factor(d);
    if (!f) {
      ++r.violations;
      continue;
    }
    const int x = usite(rng);
    int y = usite(rng);
    if (y == x) y = (x + 1) % grid.n_sites();
    const double lhs = f->inverse_entry(x, y) * std::exp(f->logdet());
    const double err = rel_err(path_expansion(d, x, y), lhs);
    r.max_error = std::max(r.max_error, err);
    if (err > tol) ++r.violations;
    ++r.instances;
  }

  r.pass = r.violations == 0;
  r.note = "random matrices (N <= 6) and 2x3 model kernels";
  return r;
}

SuiteResult suite_path_deleted_determinant(std::uint64_t seed, int n_instances) {
  std::mt19937_64 rng(seed ^ 0x3d3dull);
  std::uniform_real_distribution<double> ubeta(0.3, 1.5);
  std::uniform_real_distribution<double> ueps(0.2, 1.0);

  std::vector<Lattice> lattices;
  lattices.emplace_back(std::vector<int>{2, 3}, Bc::Neumann);
  lattices.emplace_back(std::vector<int>{5}, Bc::Neumann);

  SuiteResult r;
  r.name = "path-deleted kernel determinant";
  const double tol = 1e-10;
  for (int c = 0; c < n_instances; ++c) {
    const Lattice& lat = lattices[c % lattices.size()];
    const int n = lat.n_sites();
    ModelParams params(ubeta(rng), lat, PinningScheme::uniform(ueps(rng)));
    const FieldConfig t = random_field(rng, n, 1.0);

    std::uniform_int_distribution<int> usite(0, n - 1);
    const int x = usite(rng);
    int y = usite(rng);
    if (y == x) y = (x + 1) % n;
    const auto saws = enumerate_saws(lat, x, y, n - 1);
    if (saws.empty()) continue;
    const Path& gamma = saws[c % saws.size()];

    const Matrix d = weight_matrix(params, t);
    const PathDeletedKernel kern = path_deleted_kernel(params, t, gamma);
    const double err = rel_err(det_minor(d, gamma.sites), lu_det(kern.matrix));
    r.max_error = std::max(r.max_error, err);
    if (err > tol) ++r.violations;
    ++r.instances;
  }
  r.pass = r.violations == 0;
  r.note = "det_minor(D, path) = det of the path-deleted kernel";
  return r;
}

SuiteResult suite_conditioned_partition_bound(std::uint64_t seed, int n_instances) {
  std::mt19937_64 rng(seed ^ 0x4c4cull);
  std::uniform_real_distribution<double> utpath(-1.2, 1.2);

  struct Setup {
    Lattice lat;
    PinningScheme pin;
    double beta;
    std::vector<int> path_sites;
  };

  Lattice chain4({4}, Bc::Neumann);
  Lattice chain5({5}, Bc::Neumann);
  Lattice block22({2, 2}, Bc::Neumann);
  Lattice block23({2, 3}, Bc::Neumann);

  // Complement sizes 0-3; quadrature dims stay within the tensor limit.
  std::vector<Setup> setups = {
      {chain4, PinningScheme::single(0, 1.0), 1.0, {0, 1}},
      {chain4, PinningScheme::uniform(0.25), 0.7, {1, 2}},
      {chain4, PinningScheme::two_point(0, 1.0, 3, 0.5), 1.0, {0, 1, 2, 3}},
      {chain5, PinningScheme::single(0, 1.0), 1.0, {0, 1}},
      {chain5, PinningScheme::uniform(0.2), 0.5, {0, 1}},
      {block22, PinningScheme::two_point(0, 0.8, 3, 0.8), 1.0, {0, 1}},
      {block22, PinningScheme::single(0, 1.5), 0.7, {0, 1, 3}},
      {block23, PinningScheme::uniform(0.3), 1.0, {0, 1, 4, 5}},   // 2x3 row-major: 0 1 2 / 3 4 5
      {block23, PinningScheme::single(2, 1.0), 0.8, {0, 3, 4, 5}},
      {block23, PinningScheme::two_point(0, 1.0, 5, 1.0), 1.2, {1, 2, 5, 4}},
  };

  const QuadratureSpec spec{18.0, 20, 12};

  SuiteResult r;
  r.name = "conditioned partition bound";
  double worst_margin = -1e300;
  double exact_err = 0.0;
  for (int c = 0; c < n_instances; ++c) {
    const Setup& s = setups[c % setups.size()];
    ModelParams params(s.beta, s.lat, s.pin);
    const Path gamma = make_path(s.lat, s.path_sites);

    std::vector<double> t_path(gamma.sites.size());
    for (double& v : t_path) v = utpath(rng);

    const double z = conditioned_partition(params, spec, gamma, t_path);
    const double bound = conditioned_partition_bound(params, gamma, t_path);
    const double margin = (z - bound) / std::max(bound, 1e-300);
    worst_margin = std::max(worst_margin, margin);
    if (margin > 1e-9) ++r.violations;
    ++r.instances;

    if (c >= static_cast<int>(setups.size())) continue;
    // frozen path fields at zero: the conditioned integral is exactly 1
    std::vector<double> zeros(gamma.sites.size(), 0.0);
    const double z0 = conditioned_partition(params, spec, gamma, zeros);
    exact_err = std::max(exact_err, std::abs(z0 - 1.0));
    if (std::abs(z0 - 1.0) > 1e-5) ++r.violations;
  }
  r.max_error = std::max(std::max(0.0, worst_margin), exact_err);
  r.pass = r.violations == 0;
  r.note = "Z^gamma <= translation bound; Z^gamma(t_path = 0) = 1";
  return r;
}

SuiteResult suite_matrix_tree(std::uint64_t seed, int n_per_graph) {
  std::mt19937_64 rng(seed ^ 0x5a5aull);
  std::uniform_real_distribution<double> ubeta(0.5, 1.5);
  std::uniform_real_distribution<double> ueps(0.3, 2.0);

  std::vector<Lattice> lattices;
  for (int n = 2; n <= 6; ++n) lattices.emplace_back(std::vector<int>{n}, Bc::Neumann);
  lattices.emplace_back(std::vector<int>{2, 2}, Bc::Neumann);
  lattices.emplace_back(std::vector<int>{2, 3}, Bc::Neumann);

  SuiteResult r;
  r.name = "matrix-tree identity";
  const double tol = 1e-10;
  for (const Lattice& lat : lattices) {
    std::uniform_int_distribution<int> usite(0, lat.n_sites() - 1);
    for (int c = 0; c < n_per_graph; ++c) {
      ModelParams params(ubeta(rng), lat, PinningScheme::single(usite(rng), ueps(rng)));
      FieldConfig t = c == 0 ? FieldConfig(lat.n_sites(), 0.0)
                             : random_field(rng, lat.n_sites(), 0.8);
      const MatrixTreeSides sides = matrix_tree_identity(params, t);
      const double err = rel_err(sides.determinant, sides.tree_sum);
      r.max_error = std::max(r.max_error, err);
      if (err > tol) ++r.violations;
      ++r.instances;
    }
  }
  r.pass = r.violations == 0;
  r.note = "chains n <= 6 and the 2x2, 2x3 blocks";
  return r;
}

SuiteResult suite_single_pinning_inverse(std::uint64_t seed, int n_configs) {
  std::mt19937_64 rng(seed ^ 0x6b6bull);
  std::uniform_real_distribution<double> ubeta(0.5, 2.0);
  std::uniform_real_distribution<double> ueps(0.3, 3.0);

  Lattice lat({3, 3}, Bc::Neumann);
  std::uniform_int_distribution<int> usite(0, lat.n_sites() - 1);

  SuiteResult r;
  r.name = "single-pinning inverse identity";
  const double tol = 1e-10;
  for (int c = 0; c < n_configs; ++c) {
    const int s = usite(rng);
    ModelParams params(ubeta(rng), lat, PinningScheme::single(s, ueps(rng)));
    const FieldConfig t = random_field(rng, lat.n_sites(), 1.0);
    auto f = factor(weight_matrix(params, t));
    if (!f) {
      ++r.violations;
      continue;
    }
    for (int x = 0; x < lat.n_sites(); ++x) {
      const double via_conductance = single_pinning_identity(params, t, x);
      // same statement through the weight matrix: eps_s e^{-t_x} D^{-1}_{s,x} = 1
      const double via_kernel =
          params.pinning.eps(s) * std::exp(-t[x]) * f->inverse_entry(s, x);
      const double err =
          std::max(std::abs(via_conductance - 1.0), std::abs(via_kernel - 1.0));
      r.max_error = std::max(r.max_error, err);
      if (err > tol) ++r.violations;
    }
    ++r.instances;
  }
  r.pass = r.violations == 0;
  r.note = "eps_s e^{t_s} A^{-1}_{s,x} = 1 for every x, 3x3 lattice";
  return r;
}

SuiteResult suite_gauge_conjugation(std::uint64_t seed, int n_configs) {
  std::mt19937_64 rng(seed ^ 0x7f7full);
  std::uniform_real_distribution<double> ubeta(0.2, 2.0);
  std::uniform_real_distribution<double> ueps(0.2, 2.0);

  std::vector<Lattice> lattices;
  lattices.emplace_back(std::vector<int>{5}, Bc::Neumann);
  lattices.emplace_back(std::vector<int>{2, 3}, Bc::Neumann);
  lattices.emplace_back(std::vector<int>{3, 3}, Bc::Periodic);

  SuiteResult r;
  r.name = "gauge conjugation of log-determinants";
  const double tol = 1e-10;
  for (int c = 0; c < n_configs; ++c) {
    const Lattice& lat = lattices[c % lattices.size()];
    ModelParams params(ubeta(rng), lat, PinningScheme::uniform(ueps(rng)));
    const FieldConfig t = random_field(rng, lat.n_sites(), 1.0);
    auto fd = factor(weight_matrix(params, t));
    auto fa = factor(conductance_matrix(params, t));
    if (!fd || !fa) {
      ++r.violations;
      continue;
    }
    double tsum = 0.0;
    for (double v : t) tsum += v;
    const double lhs = fa->logdet();
    const double rhs = fd->logdet() + 2.0 * tsum;
    const double err = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    r.max_error = std::max(r.max_error, err);
    if (err > tol) ++r.violations;
    ++r.instances;
  }
  r.pass = r.violations == 0;
  r.note = "logdet A = logdet D + 2 sum_j t_j";
  return r;
}

SuiteResult suite_closed_forms() {
  SuiteResult r;
  r.name = "one-site closed forms";
  const double tol = 1e-8;
  for (double b : {0.01, 0.1, 1.0, 10.0}) {
    const double cut = std::acosh(1.0 + 60.0 / b);
    auto f = [b](double t) {
      return std::cosh(0.5 * t) * std::exp(-b * (std::cosh(t) - 1.0));
    };
    const double v = std::sqrt(b / (2.0 * M_PI)) * 2.0 * adaptive_simpson(f, 0.0, cut, 1e-12);
    const double err = std::abs(v - 1.0);
    r.max_error = std::max(r.max_error, err);
    if (err > tol) ++r.violations;
    ++r.instances;
  }
  for (double e : {0.01, 0.1, 1.0, 10.0}) {
    const double cut = std::acosh(1.0 + 60.0 / e);
    auto f = [e](double t) {
      return std::exp(0.5 * t) * std::exp(-e * (std::cosh(t) - 1.0));
    };
    const double v = adaptive_simpson(f, -cut, cut, 1e-12) / std::sqrt(2.0 * M_PI);
    const double err = std::abs(v - 1.0 / std::sqrt(e)) * std::sqrt(e);
    r.max_error = std::max(r.max_error, err);
    if (err > tol) ++r.violations;
    ++r.instances;
  }
  r.pass = r.violations == 0;
  r.note = "cosh(t/2) moment = 1; e^{t/2} moment = 1/sqrt(eps)";
  return r;
}

SuiteResult suite_critical_coupling() {
  SuiteResult r;
  r.name = "one-site integral and critical coupling";
  // I < 1 across ten decades of beta
  for (int k = 0; k < 20; ++k) {
    const double b = std::pow(10.0, -2.0 + 4.0 * k / 19.0);
    const double i = one_site_integral(b);
    r.max_error = std::max(r.max_error, i - 1.0);
    if (!(i < 1.0)) ++r.violations;
    ++r.instances;
  }
  // small-beta estimate I <= sqrt(b) ln(1/b)
  for (double b : {0.01, 0.05, 0.1}) {
    const double i = one_site_integral(b);
    const double cap = std::sqrt(b) * std::log(1.0 / b);
    if (!(i <= cap)) ++r.violations;
    ++r.instances;
  }
  if (!critical_beta(1).is_infinite) ++r.violations;
  ++r.instances;
  for (int d : {2, 3}) {
    const CriticalBeta bc = critical_beta(d);
    const double cap = 1.0 / ((2.0 * d - 1.0) * (2.0 * d - 1.0));
    const double residual = std::abs(decay_ratio(d, bc.value) - 1.0);
    r.max_error = std::max(r.max_error, residual);
    if (bc.is_infinite || !(bc.value < cap) || residual > 1e-9) ++r.violations;
    ++r.instances;
  }
  r.pass = r.violations == 0;
  r.note = "I < 1; I <= sqrt(b) ln(1/b); beta_c(1) infinite, beta_c(d) < (2d-1)^{-2}";
  return r;
}

std::vector<SuiteResult> run_identity_suites(std::uint64_t seed, bool quick) {
  std::vector<SuiteResult> out;
  out.push_back(suite_normalization(quick));
  out.push_back(suite_inverse_pinning_bound(seed, quick ? 200 : 1000));
  out.push_back(suite_path_expansion(seed, quick ? 50 : 200, quick ? 5 : 20));
  out.push_back(suite_path_deleted_determinant(seed, quick ? 10 : 30));
  out.push_back(suite_conditioned_partition_bound(seed, quick ? 6 : 20));
  out.push_back(suite_matrix_tree(seed, quick ? 3 : 10));
  out.push_back(suite_single_pinning_inverse(seed, quick ? 20 : 100));
  out.push_back(suite_gauge_conjugation(seed, quick ? 20 : 100));
  out.push_back(suite_closed_forms());
  out.push_back(suite_critical_coupling());
  return out;
}

}  // namespace h22
