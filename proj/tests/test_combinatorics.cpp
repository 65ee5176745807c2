#include "h22/combinatorics.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace h22;

namespace {

FieldConfig random_field(std::mt19937_64& rng, int n, double sigma) {
  std::normal_distribution<double> g(0.0, sigma);
  FieldConfig t(n);
  for (double& v : t) v = g(rng);
  return t;
}

}  // namespace

TEST_CASE("saw enumeration on a chain") {
  Lattice chain({4}, Bc::Neumann);
  const auto saws = enumerate_saws(chain, 0, 3, 10);
  REQUIRE(saws.size() == 1);
  CHECK(saws[0].sites == std::vector<int>{0, 1, 2, 3});
  CHECK(saws[0].length() == 3);
  CHECK(enumerate_saws(chain, 0, 3, 2).empty());
  CHECK_THROWS_AS(enumerate_saws(chain, 1, 1, 3), std::invalid_argument);
}

TEST_CASE("saw enumeration on the 2x2 block") {
  Lattice block({2, 2}, Bc::Neumann);
  const int a = block.site_index({0, 0});
  const int b = block.site_index({1, 1});
  const auto saws = enumerate_saws(block, a, b, 4);
  CHECK(saws.size() == 2);
  for (const Path& p : saws) CHECK(p.length() == 2);
}

TEST_CASE("saw counts respect the connective bound") {
  // count(n) <= 2d (2d-1)^{n-1} <= 2 c_d^n
  Lattice grid({8, 8}, Bc::Neumann);
  const int center2 = grid.site_index({3, 3});
  for (int n = 1; n <= 12; ++n) {
    const double cap = 4.0 * std::pow(3.0, n - 1);
    const long long c = count_saws_of_length(grid, center2, n);
    CHECK(static_cast<double>(c) <= cap);
    CHECK(static_cast<double>(c) <= 2.0 * std::pow(3.0, n));
  }
  Lattice cube({5, 5, 5}, Bc::Neumann);
  const int center3 = cube.site_index({2, 2, 2});
  for (int n = 1; n <= 12; ++n) {
    const double cap = 6.0 * std::pow(5.0, n - 1);
    const long long c = count_saws_of_length(cube, center3, n);
    CHECK(static_cast<double>(c) <= cap);
    CHECK(static_cast<double>(c) <= 2.0 * std::pow(5.0, n));
  }
}

TEST_CASE("path validation") {
  Lattice chain({5}, Bc::Neumann);
  CHECK_NOTHROW(make_path(chain, {1, 2, 3}));
  CHECK_THROWS_AS(make_path(chain, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(make_path(chain, {0, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_path(chain, {0, 1, 7}), std::domain_error);
}

TEST_CASE("walk-sum expansion on a 2x2 matrix") {
  Matrix m(2);
  m(0, 0) = 1.3; m(0, 1) = -0.4; m(1, 0) = 2.0; m(1, 1) = 0.9;
  CHECK(path_expansion(m, 0, 1) == doctest::Approx(0.4));  // -M_01
  CHECK(path_expansion(m, 0, 0) == doctest::Approx(0.9));  // cofactor
}

TEST_CASE("walk-sum expansion matches the adjugate on random matrices") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 3; n <= 5; ++n) {
    for (int trial = 0; trial < 30; ++trial) {
      Matrix m(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = u(rng);
      const int x = trial % n;
      const int y = (x + 1 + trial % (n - 1)) % n;
      CHECK(oracle::rel_err(path_expansion(m, x, y), oracle::adjugate_entry(m, x, y)) <
            1e-11);
    }
  }
}

TEST_CASE("walk-sum expansion still holds for a singular matrix") {
  Matrix m(3);  // rank 2: third row = first + second
  m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 0;
  m(1, 0) = 0; m(1, 1) = 1; m(1, 2) = 1;
  m(2, 0) = 1; m(2, 1) = 3; m(2, 2) = 1;
  CHECK(std::abs(oracle::perm_det(m)) < 1e-14);
  CHECK(oracle::rel_err(path_expansion(m, 0, 2), oracle::adjugate_entry(m, 0, 2)) < 1e-12);
}

TEST_CASE("walk-sum expansion on a model kernel") {
  std::mt19937_64 rng(43);
  Lattice grid({2, 3}, Bc::Neumann);
  ModelParams p(0.8, grid, PinningScheme::uniform(0.5));
  const FieldConfig t = random_field(rng, 6, 1.0);
  const Matrix d = weight_matrix(p, t);
  auto f = factor(d);
  REQUIRE(f);
  const double lhs = f->inverse_entry(0, 5) * std::exp(f->logdet());
  CHECK(oracle::rel_err(path_expansion(d, 0, 5), lhs) < 1e-10);
}

TEST_CASE("loop-gas determinant equals the permutation expansion") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 1; n <= 5; ++n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = u(rng);
    CHECK(oracle::rel_err(oracle::loop_gas_det(m), oracle::perm_det(m)) < 1e-12);
  }
}

TEST_CASE("path-deleted kernel") {
  std::mt19937_64 rng(53);
  Lattice grid({2, 3}, Bc::Neumann);
  ModelParams p(0.9, grid, PinningScheme::uniform(0.4));

  SUBCASE("masses at t = 0 gain beta per deleted neighbor") {
    const Path gamma = make_path(grid, {0, 1});
    const FieldConfig t(6, 0.0);
    const PathDeletedKernel k = path_deleted_kernel(p, t, gamma);
    CHECK(k.kept_sites == std::vector<int>{2, 3, 4, 5});
    // 2x3 row-major: site 2 neighbors 1; site 3 neighbors 0; site 4 neighbors 1
    CHECK(k.modified_eps[0] == doctest::Approx(0.4 + 0.9));
    CHECK(k.modified_eps[1] == doctest::Approx(0.4 + 0.9));
    CHECK(k.modified_eps[2] == doctest::Approx(0.4 + 0.9));
    CHECK(k.modified_eps[3] == doctest::Approx(0.4));
  }

  SUBCASE("determinant equals the minor of the full kernel") {
    for (int trial = 0; trial < 20; ++trial) {
      const FieldConfig t = random_field(rng, 6, 1.0);
      const auto saws = enumerate_saws(grid, 0, 5, 5);
      const Path& gamma = saws[trial % saws.size()];
      const Matrix d = weight_matrix(p, t);
      const PathDeletedKernel k = path_deleted_kernel(p, t, gamma);
      CHECK(oracle::rel_err(det_minor(d, gamma.sites), lu_det(k.matrix)) < 1e-10);
    }
  }

  SUBCASE("whole lattice deleted -> empty matrix with det 1") {
    Lattice chain({3}, Bc::Neumann);
    ModelParams pc(1.0, chain, PinningScheme::uniform(0.5));
    const Path gamma = make_path(chain, {0, 1, 2});
    const PathDeletedKernel k = path_deleted_kernel(pc, {0.1, 0.2, 0.3}, gamma);
    CHECK(k.matrix.size() == 0);
    CHECK(lu_det(k.matrix) == 1.0);
  }
}

TEST_CASE("boundary size") {
  Lattice chain({6}, Bc::Neumann);
  CHECK(boundary_size(chain, make_path(chain, {2, 3})) == 2);
  CHECK(boundary_size(chain, make_path(chain, {0, 1})) == 1);
  CHECK(boundary_size(chain, make_path(chain, {0, 1, 2, 3, 4, 5})) == 0);

  Lattice grid({4, 7}, Bc::Neumann);
  // straight bulk path of n edges: exactly 2n + 4 boundary points, attaining
  // the slot-count bound (2d-2) * (n+1 sites) + 2
  for (int len = 1; len <= 4; ++len) {
    std::vector<int> sites;
    for (int c = 1; c <= len + 1; ++c) sites.push_back(grid.site_index({2, c}));
    const Path gamma = make_path(grid, sites);
    CHECK(boundary_size(grid, gamma) == 2 * len + 4);
    CHECK(boundary_size(grid, gamma) <=
          (2 * grid.dim() - 2) * static_cast<int>(gamma.sites.size()) + 2);
  }

  // the site-count bound holds for every walk on a 3x3 block
  Lattice block({3, 3}, Bc::Neumann);
  for (const Path& gamma : enumerate_saws(block, 0, 8, 8))
    CHECK(boundary_size(block, gamma) <=
          2 * static_cast<int>(gamma.sites.size()) + 2);
}

TEST_CASE("spanning tree enumeration") {
  CHECK(enumerate_spanning_trees(Lattice({5}, Bc::Neumann)).size() == 1);
  CHECK(enumerate_spanning_trees(Lattice({2, 2}, Bc::Neumann)).size() == 4);
  CHECK(enumerate_spanning_trees(Lattice({2, 3}, Bc::Neumann)).size() == 15);
  CHECK(enumerate_spanning_trees(Lattice({3}, Bc::Periodic)).size() == 3);
  CHECK_THROWS_AS(enumerate_spanning_trees(Lattice({10}, Bc::Neumann)),
                  std::invalid_argument);

  SUBCASE("every tree spans and is acyclic") {
    for (const SpanningTree& t : enumerate_spanning_trees(Lattice({3, 3}, Bc::Neumann))) {
      CHECK(t.edges.size() == 8);
      std::vector<int> parent(9);
      for (int i = 0; i < 9; ++i) parent[i] = i;
      auto root = [&](auto&& self, int v) -> int {
        return parent[v] == v ? v : parent[v] = self(self, parent[v]);
      };
      for (auto [a, b] : t.edges) {
        CHECK(root(root, a) != root(root, b));
        parent[root(root, a)] = root(root, b);
      }
    }
  }

  SUBCASE("kirchhoff count via the reduced laplacian") {
    for (const Lattice& lat :
         {Lattice({2, 3}, Bc::Neumann), Lattice({4}, Bc::Periodic), Lattice({3, 3}, Bc::Neumann)}) {
      const int n = lat.n_sites();
      Matrix lap(n);
      for (auto [a, b] : lat.bonds()) {
        lap(a, b) -= 1.0;
        lap(b, a) -= 1.0;
        lap(a, a) += 1.0;
        lap(b, b) += 1.0;
      }
      const double count = det_minor(lap, {0});
      CHECK(std::llround(count) ==
            static_cast<long long>(enumerate_spanning_trees(lat).size()));
    }
  }
}

TEST_CASE("matrix-tree identity") {
  Lattice two({2}, Bc::Neumann);
  ModelParams p2(1.0, two, PinningScheme::single(0, 1.0));
  const MatrixTreeSides s2 = matrix_tree_identity(p2, {0.0, 0.0});
  CHECK(s2.determinant == doctest::Approx(1.0));
  CHECK(s2.tree_sum == doctest::Approx(1.0));

  Lattice block({2, 2}, Bc::Neumann);
  ModelParams pb(1.0, block, PinningScheme::single(0, 1.0));
  const MatrixTreeSides sb = matrix_tree_identity(pb, FieldConfig(4, 0.0));
  CHECK(sb.determinant == doctest::Approx(4.0));
  CHECK(sb.tree_sum == doctest::Approx(4.0));

  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    ModelParams pr(0.7, block, PinningScheme::single(trial % 4, 1.3));
    const FieldConfig t = random_field(rng, 4, 0.8);
    const MatrixTreeSides s = matrix_tree_identity(pr, t);
    CHECK(oracle::rel_err(s.determinant, s.tree_sum) < 1e-10);
  }

  ModelParams wrong(1.0, two, PinningScheme::uniform(0.5));
  CHECK_THROWS_AS(matrix_tree_identity(wrong, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("single-pinning inverse identity") {
  Lattice two({2}, Bc::Neumann);
  ModelParams p(1.0, two, PinningScheme::single(0, 2.0));
  CHECK(single_pinning_identity(p, {0.3, -0.7}, 0) == doctest::Approx(1.0));
  CHECK(single_pinning_identity(p, {0.3, -0.7}, 1) == doctest::Approx(1.0));

  ModelParams wrong(1.0, two, PinningScheme::uniform(0.5));
  CHECK_THROWS_AS(single_pinning_identity(wrong, {0.0, 0.0}, 0), std::invalid_argument);
}
