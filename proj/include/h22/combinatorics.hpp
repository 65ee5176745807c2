#pragma once

#include <utility>
#include <vector>

#include "h22/lattice.hpp"
#include "h22/linalg.hpp"
#include "h22/model.hpp"

namespace h22 {

// Ordered self-avoiding nearest-neighbor walk; length counts edges.
struct Path {
  std::vector<int> sites;
  int length() const { return static_cast<int>(sites.size()) - 1; }
};

// Validates adjacency and self-avoidance.
Path make_path(const Lattice& lat, std::vector<int> sites);

// All self-avoiding walks from x to y of length <= max_len, depth-first
// order (neighbor order of the lattice), deterministic.
std::vector<Path> enumerate_saws(const Lattice& lat, int x, int y, int max_len);

// Number of self-avoiding walks of exactly n steps starting at x.
long long count_saws_of_length(const Lattice& lat, int x, int n);

// Sum over self-avoiding walks gamma from x to y in the support graph of m of
//   prod_steps (-m_step) * det of m with the walk's rows/columns deleted.
// Equals (m^{-1})_{xy} det m for invertible m. For x == y this degenerates to
// the cofactor det_minor(m, {x}).
double path_expansion(const Matrix& m, int x, int y);

struct PathDeletedKernel {
  Matrix matrix;                    // weight matrix restricted to the complement
  std::vector<double> modified_eps; // eps_i + beta sum_{k in path, k~i} e^{t_k}
  std::vector<int> kept_sites;      // complement sites, ascending
};

// Weight matrix with the path's rows and columns deleted. The deleted bonds
// reappear as extra site masses, so det equals det_minor(weight_matrix, path).
PathDeletedKernel path_deleted_kernel(const ModelParams& p, const FieldConfig& t,
                                      const Path& gamma);

// Number of complement sites adjacent to the path. Counting neighbor slots
// gives the bound (2d - 2) * (path sites) + 2; a straight path in the bulk
// of a 2d lattice attains it.
int boundary_size(const Lattice& lat, const Path& gamma);

struct SpanningTree {
  std::vector<std::pair<int, int>> edges;
};

// All spanning trees of the lattice adjacency, deterministic order.
// Enumeration is exponential; refuses lattices above 9 sites.
std::vector<SpanningTree> enumerate_spanning_trees(const Lattice& lat);

struct MatrixTreeSides {
  double determinant;  // det of the conductance matrix
  double tree_sum;     // eps_s e^{t_s} sum_T prod_{(jk) in T} beta e^{t_j + t_k}
};

// Both sides of the matrix-tree identity for a single-pinning scheme.
MatrixTreeSides matrix_tree_identity(const ModelParams& p, const FieldConfig& t);

// eps_s e^{t_s} (A^{-1})_{s,x} for the single pinned site s; equals 1 for
// every x because the conductance matrix annihilates constants up to the
// pinning term.
double single_pinning_identity(const ModelParams& p, const FieldConfig& t, int x);

}  // namespace h22
