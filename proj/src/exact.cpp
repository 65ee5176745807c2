#include "h22/exact.hpp"

#include <cmath>
#include <functional>
#include <future>
#include <stdexcept>
#include <thread>

#include "h22/quadrature.hpp"

namespace h22 {

namespace {

constexpr int kMaxTensorSites = 4;

struct Grid1d {
  std::vector<double> x;
  std::vector<double> w;
};

Grid1d make_grid(const QuadratureSpec& spec) {
  if (!(spec.half_width > 0.0) || spec.panels < 1 || spec.order < 1)
    throw std::invalid_argument("invalid quadrature spec");
  const GaussLegendre gl = gauss_legendre(spec.order);
  Grid1d g;
  const double width = 2.0 * spec.half_width / spec.panels;
  for (int p = 0; p < spec.panels; ++p) {
    const double a = -spec.half_width + p * width;
    for (int q = 0; q < spec.order; ++q) {
      g.x.push_back(a + 0.5 * width * (gl.nodes[q] + 1.0));
      g.w.push_back(0.5 * width * gl.weights[q]);
    }
  }
  return g;
}

// Tensor-product sum over the free sites, frozen base elsewhere. The outer
// dimension is split across threads; per-index partial sums are combined in
// index order, so the result does not depend on the thread count.
double tensor_sum(const Grid1d& grid, const std::vector<int>& free_sites,
                  const FieldConfig& base,
                  const std::function<double(const FieldConfig&)>& eval) {
  const int n_free = static_cast<int>(free_sites.size());
  if (n_free == 0) return eval(base);
  const int m = static_cast<int>(grid.x.size());

  auto outer_partial = [&](int i0) {
    FieldConfig t = base;
    t[free_sites[0]] = grid.x[i0];
    const double w0 = grid.w[i0];
    if (n_free == 1) return w0 * eval(t);
    std::vector<int> idx(n_free - 1, 0);
    double sum = 0.0;
    for (;;) {
      double w = w0;
      for (int a = 0; a < n_free - 1; ++a) {
        t[free_sites[a + 1]] = grid.x[idx[a]];
        w *= grid.w[idx[a]];
      }
      sum += w * eval(t);
      int a = n_free - 2;
      while (a >= 0 && ++idx[a] == m) idx[a--] = 0;
      if (a < 0) break;
    }
    return sum;
  };

  std::vector<double> partial(m, 0.0);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int n_workers = static_cast<int>(std::min<unsigned>(hw, m));
  if (n_workers <= 1 || n_free == 1) {
    for (int i = 0; i < m; ++i) partial[i] = outer_partial(i);
  } else {
    std::vector<std::future<void>> futs;
    const int block = (m + n_workers - 1) / n_workers;
    for (int w = 0; w < n_workers; ++w) {
      const int lo = w * block, hi = std::min(m, lo + block);
      if (lo >= hi) break;
      futs.push_back(std::async(std::launch::async, [&, lo, hi] {
        for (int i = lo; i < hi; ++i) partial[i] = outer_partial(i);
      }));
    }
    for (auto& f : futs) f.get();
  }
  double total = 0.0;
  for (int i = 0; i < m; ++i) total += partial[i];
  return total * std::pow(2.0 * M_PI, -0.5 * n_free);
}

std::vector<int> all_sites(const ModelParams& p) {
  std::vector<int> s(p.lattice.n_sites());
  for (int j = 0; j < p.lattice.n_sites(); ++j) s[j] = j;
  return s;
}

void check_tensor_size(int n_free) {
  if (n_free > kMaxTensorSites)
    throw std::invalid_argument(
        "tensor quadrature is limited to 4 integrated sites; use the sampler "
        "for larger volumes");
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw std::runtime_error(std::string(what) + ": non-finite result");
  return v;
}

}  // namespace

QuadratureSpec QuadratureSpec::recommended(const ModelParams& p) {
  QuadratureSpec s;
  double half_width = 40.0;
  const double eps_min = p.pinning.min_positive();
  if (eps_min > 0.0)
    half_width = std::max(half_width, std::acosh(1.0 + 46.0 / eps_min) + 10.0);
  if (p.pinning.mode() == PinningScheme::Mode::Single && p.lattice.n_sites() > 1)
    half_width = std::max(half_width, 60.0);
  s.half_width = half_width;
  s.panels = std::max(24, static_cast<int>(std::lround(0.6 * half_width)));
  s.order = 16;
  return s;
}

double partition_function(const ModelParams& p, const QuadratureSpec& spec) {
  check_tensor_size(p.lattice.n_sites());
  if (!p.pinning.any_positive())
    throw std::invalid_argument("partition function needs a positive pinning weight");
  const Grid1d grid = make_grid(spec);
  FieldConfig base(p.lattice.n_sites(), 0.0);
  const double z = tensor_sum(grid, all_sites(p), base, [&](const FieldConfig& t) {
    auto ev = evaluate_weight(p, t);
    return ev ? std::exp(ev->log_weight) : 0.0;
  });
  return checked(z, "partition_function");
}

double expectation(const ModelParams& p, const QuadratureSpec& spec,
                   const Observable& obs, bool normalize) {
  check_tensor_size(p.lattice.n_sites());
  if (!p.pinning.any_positive())
    throw std::invalid_argument("expectation needs a positive pinning weight");
  const int n = p.lattice.n_sites();
  if (obs.x < 0 || obs.x >= n || obs.y < 0 || obs.y >= n)
    throw std::domain_error("observable site out of range");
  if (obs.kind == Observable::Kind::Correlation &&
      !(p.pinning.eps(obs.x) > 0.0 && p.pinning.eps(obs.y) > 0.0))
    throw std::invalid_argument(
        "correlation observable needs positive pinning at both sites");

  const Grid1d grid = make_grid(spec);
  FieldConfig base(n, 0.0);
  const double raw = tensor_sum(grid, all_sites(p), base, [&](const FieldConfig& t) {
    auto ev = evaluate_weight(p, t);
    if (!ev) return 0.0;
    const double f = obs.kind == Observable::Kind::Correlation
                         ? ev->factor.inverse_entry(obs.x, obs.y)
                         : std::exp(0.5 * t[obs.x]);
    return std::exp(ev->log_weight) * f;
  });
  if (!normalize) return checked(raw, "expectation");
  return checked(raw / partition_function(p, spec), "expectation");
}

double conditioned_partition(const ModelParams& p, const QuadratureSpec& spec,
                             const Path& gamma, const std::vector<double>& t_path) {
  const int n = p.lattice.n_sites();
  if (t_path.size() != gamma.sites.size())
    throw std::invalid_argument("path field values must match the path length");
  std::vector<char> on_path(n, 0);
  for (int s : gamma.sites) {
    if (s < 0 || s >= n) throw std::domain_error("path site out of range");
    if (on_path[s]) throw std::invalid_argument("path is not self-avoiding");
    on_path[s] = 1;
  }
  std::vector<int> complement;
  for (int j = 0; j < n; ++j)
    if (!on_path[j]) complement.push_back(j);
  check_tensor_size(static_cast<int>(complement.size()));
  if (complement.empty()) return 1.0;  // empty integral, empty determinant

  // Bonds inside the complement and bonds crossing the path boundary.
  std::vector<std::pair<int, int>> inner, crossing;
  for (auto [j, k] : p.lattice.bonds()) {
    if (!on_path[j] && !on_path[k]) inner.emplace_back(j, k);
    else if (on_path[j] != on_path[k]) crossing.emplace_back(j, k);
  }

  FieldConfig base(n, 0.0);
  for (std::size_t i = 0; i < gamma.sites.size(); ++i) base[gamma.sites[i]] = t_path[i];

  auto eval = [&](const FieldConfig& t) {
    double action = 0.0;
    for (auto [j, k] : inner) action += p.beta * (std::cosh(t[j] - t[k]) - 1.0);
    for (auto [j, k] : crossing) action += p.beta * (std::cosh(t[j] - t[k]) - 1.0);
    for (int j : complement) {
      const double e = p.pinning.eps(j);
      if (e > 0.0) action += e * (std::cosh(t[j]) - 1.0);
    }
    const PathDeletedKernel kern = path_deleted_kernel(p, t, gamma);
    auto f = factor(kern.matrix);
    if (!f) return 0.0;
    const double le = -action + 0.5 * f->logdet();
    return std::exp(le);
  };

  const Grid1d grid = make_grid(spec);
  return checked(tensor_sum(grid, complement, base, eval), "conditioned_partition");
}

double conditioned_partition_bound(const ModelParams& p, const Path& gamma,
                                   const std::vector<double>& t_path) {
  const int n = p.lattice.n_sites();
  if (t_path.size() != gamma.sites.size())
    throw std::invalid_argument("path field values must match the path length");
  std::vector<char> on_path(n, 0);
  for (int s : gamma.sites) on_path[s] = 1;

  double t_star = 0.0;
  for (double v : t_path) t_star = std::max(t_star, v);

  double exponent = 0.0;
  for (std::size_t i = 0; i < gamma.sites.size(); ++i) {
    const int k = gamma.sites[i];
    int d_k = 0;  // bonds from this path site into the complement
    for (auto [a, b] : p.lattice.bonds()) {
      if (a == k && !on_path[b]) ++d_k;
      if (b == k && !on_path[a]) ++d_k;
    }
    exponent += p.beta * d_k * (1.0 - std::exp(t_path[i] - t_star));
  }
  for (int j = 0; j < n; ++j)
    if (!on_path[j]) exponent += p.pinning.eps(j) * (1.0 - std::exp(-t_star));
  return std::exp(exponent);
}

double quadrature_tail_estimate(const ModelParams& p, const QuadratureSpec& spec) {
  const double eps_min = p.pinning.min_positive();
  if (eps_min <= 0.0) return 1.0;
  return std::exp(-eps_min * (std::cosh(spec.half_width) - 1.0));
}

}  // namespace h22
