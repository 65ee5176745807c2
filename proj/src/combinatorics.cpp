#include "h22/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace h22 {

namespace {

bool adjacent(const Lattice& lat, int a, int b) {
  const auto& nb = lat.neighbors(a);
  return std::find(nb.begin(), nb.end(), b) != nb.end();
}

}  // namespace

Path make_path(const Lattice& lat, std::vector<int> sites) {
  if (sites.empty()) throw std::invalid_argument("path needs at least one site");
  std::vector<char> seen(lat.n_sites(), 0);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const int s = sites[i];
    if (s < 0 || s >= lat.n_sites()) throw std::domain_error("path site out of range");
    if (seen[s]) throw std::invalid_argument("path is not self-avoiding");
    seen[s] = 1;
    if (i > 0 && !adjacent(lat, sites[i - 1], s))
      throw std::invalid_argument("path sites are not nearest neighbors");
  }
  return Path{std::move(sites)};
}

std::vector<Path> enumerate_saws(const Lattice& lat, int x, int y, int max_len) {
  if (x == y) throw std::invalid_argument("walk endpoints must differ");
  lat.neighbors(x);  // validates x
  lat.neighbors(y);
  std::vector<Path> out;
  std::vector<int> stack{x};
  std::vector<char> used(lat.n_sites(), 0);
  used[x] = 1;

  auto dfs = [&](auto&& self, int cur) -> void {
    if (static_cast<int>(stack.size()) - 1 >= max_len) return;
    int prev = -1;
    for (int k : lat.neighbors(cur)) {
      if (k == prev) continue;  // parallel bond under periodic extent 2
      prev = k;
      if (used[k]) continue;
      if (k == y) {
        std::vector<int> sites = stack;
        sites.push_back(y);
        out.push_back(Path{std::move(sites)});
        continue;
      }
      used[k] = 1;
      stack.push_back(k);
      self(self, k);
      stack.pop_back();
      used[k] = 0;
    }
  };
  dfs(dfs, x);
  return out;
}

long long count_saws_of_length(const Lattice& lat, int x, int n) {
  if (n < 0) throw std::invalid_argument("walk length must be >= 0");
  std::vector<char> used(lat.n_sites(), 0);
  used[x] = 1;
  long long count = 0;
  auto dfs = [&](auto&& self, int cur, int steps_left) -> void {
    if (steps_left == 0) {
      ++count;
      return;
    }
    int prev = -1;
    for (int k : lat.neighbors(cur)) {
      if (k == prev) continue;
      prev = k;
      if (used[k]) continue;
      used[k] = 1;
      self(self, k, steps_left - 1);
      used[k] = 0;
    }
  };
  dfs(dfs, x, n);
  return count;
}

double path_expansion(const Matrix& m, int x, int y) {
  const int n = m.size();
  if (x < 0 || x >= n || y < 0 || y >= n)
    throw std::domain_error("path_expansion: index out of range");
  if (x == y) return det_minor(m, {x});

  std::vector<int> walk{x};
  std::vector<char> used(n, 0);
  used[x] = 1;
  double sum = 0.0;

  auto dfs = [&](auto&& self, int cur, double prod) -> void {
    for (int k = 0; k < n; ++k) {
      if (k == cur || used[k] || m(cur, k) == 0.0) continue;
      const double next = prod * (-m(cur, k));
      if (k == y) {
        std::vector<int> removed = walk;
        removed.push_back(y);
        sum += next * det_minor(m, removed);
        continue;
      }
      used[k] = 1;
      walk.push_back(k);
      self(self, k, next);
      walk.pop_back();
      used[k] = 0;
    }
  };
  dfs(dfs, x, 1.0);
  return sum;
}

PathDeletedKernel path_deleted_kernel(const ModelParams& p, const FieldConfig& t,
                                      const Path& gamma) {
  const int n = p.lattice.n_sites();
  if (static_cast<int>(t.size()) != n)
    throw std::invalid_argument("field configuration size mismatch");
  std::vector<char> on_path(n, 0);
  for (int s : gamma.sites) {
    if (s < 0 || s >= n) throw std::domain_error("path site out of range");
    if (on_path[s]) throw std::invalid_argument("path is not self-avoiding");
    on_path[s] = 1;
  }

  PathDeletedKernel out;
  std::vector<int> pos(n, -1);
  for (int j = 0; j < n; ++j) {
    if (on_path[j]) continue;
    pos[j] = static_cast<int>(out.kept_sites.size());
    out.kept_sites.push_back(j);
  }
  const int k = static_cast<int>(out.kept_sites.size());
  out.matrix = Matrix(k);
  out.modified_eps.resize(k);
  for (int a = 0; a < k; ++a) out.modified_eps[a] = p.pinning.eps(out.kept_sites[a]);

  for (auto [i, j] : p.lattice.bonds()) {
    if (!on_path[i] && !on_path[j]) {
      const int a = pos[i], b = pos[j];
      out.matrix(a, b) -= p.beta;
      out.matrix(b, a) -= p.beta;
      out.matrix(a, a) += p.beta * std::exp(t[j] - t[i]);
      out.matrix(b, b) += p.beta * std::exp(t[i] - t[j]);
    } else if (!on_path[i] && on_path[j]) {
      out.modified_eps[pos[i]] += p.beta * std::exp(t[j]);  // deleted bond becomes mass
    } else if (on_path[i] && !on_path[j]) {
      out.modified_eps[pos[j]] += p.beta * std::exp(t[i]);
    }
  }
  for (int a = 0; a < k; ++a)
    out.matrix(a, a) += out.modified_eps[a] * std::exp(-t[out.kept_sites[a]]);
  return out;
}

int boundary_size(const Lattice& lat, const Path& gamma) {
  std::vector<char> on_path(lat.n_sites(), 0);
  for (int s : gamma.sites) on_path[s] = 1;
  std::vector<char> counted(lat.n_sites(), 0);
  int count = 0;
  for (int s : gamma.sites) {
    for (int k : lat.neighbors(s)) {
      if (!on_path[k] && !counted[k]) {
        counted[k] = 1;
        ++count;
      }
    }
  }
  return count;
}

std::vector<SpanningTree> enumerate_spanning_trees(const Lattice& lat) {
  const int n = lat.n_sites();
  if (n > 9) throw std::invalid_argument("spanning tree enumeration is limited to 9 sites");
  const auto& bonds = lat.bonds();
  const int nb = static_cast<int>(bonds.size());

  std::vector<SpanningTree> out;
  std::vector<int> chosen;
  std::vector<int> parent(n);

  auto root = [&](auto&& self, int v) -> int {
    return parent[v] == v ? v : parent[v] = self(self, parent[v]);
  };

  // Include/exclude recursion over the bond list (lexicographic order).
  auto rec = [&](auto&& self, int next, int n_edges) -> void {
    if (n_edges == n - 1) {
      SpanningTree tree;
      for (int e : chosen) tree.edges.push_back(bonds[e]);
      out.push_back(std::move(tree));
      return;
    }
    if (next == nb || n_edges + (nb - next) < n - 1) return;
    // include bonds[next] when it joins two components
    const auto saved = parent;
    const int ra = root(root, bonds[next].first);
    const int rb = root(root, bonds[next].second);
    if (ra != rb) {
      parent[ra] = rb;
      chosen.push_back(next);
      self(self, next + 1, n_edges + 1);
      chosen.pop_back();
      parent = saved;
    }
    self(self, next + 1, n_edges);
  };

  for (int v = 0; v < n; ++v) parent[v] = v;
  rec(rec, 0, 0);
  return out;
}

MatrixTreeSides matrix_tree_identity(const ModelParams& p, const FieldConfig& t) {
  if (p.pinning.mode() != PinningScheme::Mode::Single)
    throw std::invalid_argument("matrix-tree identity needs a single-pinning scheme");
  const int s = p.pinning.site_a();
  MatrixTreeSides sides;
  sides.determinant = lu_det(conductance_matrix(p, t));
  double tree_sum = 0.0;
  for (const SpanningTree& tree : enumerate_spanning_trees(p.lattice)) {
    double w = 1.0;
    for (auto [j, k] : tree.edges) w *= p.beta * std::exp(t[j] + t[k]);
    tree_sum += w;
  }
  sides.tree_sum = p.pinning.eps(s) * std::exp(t[s]) * tree_sum;
  return sides;
}

double single_pinning_identity(const ModelParams& p, const FieldConfig& t, int x) {
  if (p.pinning.mode() != PinningScheme::Mode::Single)
    throw std::invalid_argument("single-pinning identity needs a single-pinning scheme");
  const int s = p.pinning.site_a();
  auto f = factor(conductance_matrix(p, t));
  if (!f) throw std::runtime_error("conductance matrix not positive definite");
  return p.pinning.eps(s) * std::exp(t[s]) * f->inverse_entry(s, x);
}

}  // namespace h22
