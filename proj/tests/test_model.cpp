#include "h22/model.hpp"

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

TEST_CASE("kinetic action") {
  Lattice two({2}, Bc::Neumann);
  ModelParams p(1.0, two, PinningScheme::uniform(0.5));

  CHECK(kinetic_action(p, {0.0, 0.0}) == doctest::Approx(0.0));
  // cosh(ln 2) = 5/4
  CHECK(kinetic_action(p, {0.0, std::log(2.0)}) == doctest::Approx(0.25));

  Lattice ring({4}, Bc::Periodic);
  ModelParams pr(2.0, ring, PinningScheme::uniform(0.1));
  CHECK(kinetic_action(pr, FieldConfig(4, 1.7)) == doctest::Approx(0.0));  // gradient invariance

  CHECK_THROWS_AS(kinetic_action(p, FieldConfig(3, 0.0)), std::invalid_argument);
}

TEST_CASE("mass action") {
  Lattice one({1}, Bc::Neumann);
  ModelParams p(1.0, one, PinningScheme::single(0, 1.0));
  CHECK(mass_action(p, {0.0}) == doctest::Approx(0.0));
  CHECK(mass_action(p, {std::log(2.0)}) == doctest::Approx(0.25));

  Lattice chain({5}, Bc::Neumann);
  ModelParams pu(1.0, chain, PinningScheme::uniform(0.3));
  const double c = 0.9;
  CHECK(mass_action(pu, FieldConfig(5, c)) ==
        doctest::Approx(5 * 0.3 * (std::cosh(c) - 1.0)));
}

TEST_CASE("weight matrix on the 2-site chain") {
  Lattice two({2}, Bc::Neumann);
  ModelParams p(1.0, two, PinningScheme::uniform(0.5));
  const Matrix d = weight_matrix(p, {0.0, 0.0});
  CHECK(d(0, 0) == doctest::Approx(1.5));
  CHECK(d(1, 1) == doctest::Approx(1.5));
  CHECK(d(0, 1) == doctest::Approx(-1.0));
  auto f = factor(d);
  REQUIRE(f);
  CHECK(std::exp(f->logdet()) == doctest::Approx(1.25));
  CHECK(f->inverse_entry(0, 1) == doctest::Approx(0.8));
}

TEST_CASE("weight matrix at t = 0 is beta Laplacian + diag(eps)") {
  Lattice lat({2, 3}, Bc::Neumann);
  const double beta = 0.7;
  ModelParams p(beta, lat, PinningScheme::two_point(0, 0.4, 5, 0.9));
  const Matrix d = weight_matrix(p, FieldConfig(lat.n_sites(), 0.0));
  for (int i = 0; i < lat.n_sites(); ++i) {
    for (int j = 0; j < lat.n_sites(); ++j) {
      if (i == j) {
        CHECK(d(i, i) ==
              doctest::Approx(beta * lat.neighbors(i).size() + p.pinning.eps(i)));
      } else {
        const auto& nb = lat.neighbors(i);
        const bool adj = std::count(nb.begin(), nb.end(), j) > 0;
        CHECK(d(i, j) == doctest::Approx(adj ? -beta : 0.0));
      }
    }
  }
}

TEST_CASE("constant field shifts only the pinning diagonal under periodic bc") {
  Lattice ring({4}, Bc::Periodic);
  ModelParams p(1.3, ring, PinningScheme::uniform(0.2));
  const double c = 0.8;
  const Matrix d0 = weight_matrix(p, FieldConfig(4, 0.0));
  const Matrix dc = weight_matrix(p, FieldConfig(4, c));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j)
        CHECK(dc(i, i) - d0(i, i) == doctest::Approx(0.2 * (std::exp(-c) - 1.0)));
      else
        CHECK(dc(i, j) == doctest::Approx(d0(i, j)));
    }
}

TEST_CASE("conductance matrix on the 2-site chain") {
  Lattice two({2}, Bc::Neumann);
  ModelParams p(1.0, two, PinningScheme::single(0, 1.0));
  const Matrix a = conductance_matrix(p, {0.0, 0.0});
  CHECK(a(0, 0) == doctest::Approx(2.0));
  CHECK(a(0, 1) == doctest::Approx(-1.0));
  CHECK(a(1, 1) == doctest::Approx(1.0));
  CHECK(lu_det(a) == doctest::Approx(1.0));
}

TEST_CASE("conductance matrix is the gauge conjugate of the weight matrix") {
  std::mt19937_64 rng(23);
  Lattice lat({3, 3}, Bc::Neumann);
  std::uniform_real_distribution<double> ueps(0.1, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    ModelParams p(0.8, lat, PinningScheme::two_point(1, ueps(rng), 7, ueps(rng)));
    const FieldConfig t = random_field(rng, lat.n_sites(), 1.0);
    const Matrix d = weight_matrix(p, t);
    const Matrix a = conductance_matrix(p, t);
    for (int i = 0; i < lat.n_sites(); ++i)
      for (int j = 0; j < lat.n_sites(); ++j)
        CHECK(a(i, j) ==
              doctest::Approx(std::exp(t[i]) * d(i, j) * std::exp(t[j])).epsilon(1e-12));
  }
}

TEST_CASE("log weight") {
  Lattice one({1}, Bc::Neumann);
  ModelParams p1(1.0, one, PinningScheme::single(0, 1.0));
  CHECK(*log_weight(p1, {0.0}) == doctest::Approx(0.0));

  Lattice two({2}, Bc::Neumann);
  ModelParams p2(1.0, two, PinningScheme::uniform(0.5));
  CHECK(*log_weight(p2, {0.0, 0.0}) == doctest::Approx(0.5 * std::log(1.25)));

  SUBCASE("no pinning -> undefined weight") {
    ModelParams p0(1.0, two, PinningScheme::uniform(0.0));
    CHECK(!log_weight(p0, {0.0, 0.0}));
  }

  SUBCASE("large |t_0| eventually decreases the weight") {
    for (double sign : {+1.0, -1.0}) {
      double prev = *log_weight(p2, {sign * 6.0, 0.3});
      for (double mag : {8.0, 10.0, 12.0}) {
        const double cur = *log_weight(p2, {sign * mag, 0.3});
        CHECK(cur < prev);
        prev = cur;
      }
    }
  }
}

TEST_CASE("kernel is positive definite whenever some pinning is positive") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ubeta(0.05, 3.0);
  std::uniform_real_distribution<double> ueps(1e-3, 2.0);
  Lattice lat({2, 3}, Bc::Periodic);
  int mode = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    PinningScheme pin = mode == 0   ? PinningScheme::uniform(ueps(rng))
                        : mode == 1 ? PinningScheme::two_point(0, ueps(rng), 4, ueps(rng))
                                    : PinningScheme::single(trial % 6, ueps(rng));
    mode = (mode + 1) % 3;
    ModelParams p(ubeta(rng), lat, pin);
    const FieldConfig t = random_field(rng, 6, 1.5);
    CHECK(evaluate_weight(p, t).has_value());
  }
}

TEST_CASE("gradient of -F-M matches finite differences") {
  std::mt19937_64 rng(31);
  Lattice lat({2, 3}, Bc::Neumann);
  ModelParams p(0.9, lat, PinningScheme::uniform(0.6));
  const int n = lat.n_sites();
  for (int trial = 0; trial < 5; ++trial) {
    const FieldConfig t = random_field(rng, n, 0.8);
    for (int j = 0; j < n; ++j) {
      // analytic: -beta sum_{k~j} sinh(t_j - t_k) - eps_j sinh(t_j)
      double grad = -p.pinning.eps(j) * std::sinh(t[j]);
      for (int k : lat.neighbors(j)) grad -= p.beta * std::sinh(t[j] - t[k]);

      const double h = 1e-5;
      FieldConfig tp = t, tm = t;
      tp[j] += h;
      tm[j] -= h;
      auto neg_fm = [&](const FieldConfig& c) {
        return -kinetic_action(p, c) - mass_action(p, c);
      };
      const double fd = (neg_fm(tp) - neg_fm(tm)) / (2.0 * h);
      CHECK(oracle::rel_err(grad, fd) < 1e-6);
    }
  }
}

TEST_CASE("pinning scheme bookkeeping") {
  PinningScheme pin = PinningScheme::two_point(0, 0.5, 3, 0.4);
  CHECK(pin.eps(0) == 0.5);
  CHECK(pin.eps(1) == 0.0);
  CHECK(pin.eps(3) == 0.4);
  CHECK(pin.total(8) == doctest::Approx(0.9));
  CHECK(pin.sum_condition_holds(8));
  CHECK(pin.min_positive() == doctest::Approx(0.4));
  CHECK(pin.pinned_sites(8) == std::vector<int>{0, 3});

  CHECK(!PinningScheme::uniform(0.0).any_positive());
  CHECK(!PinningScheme::uniform(0.2).sum_condition_holds(6));
  CHECK_THROWS_AS(PinningScheme::uniform(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(PinningScheme::two_point(2, 0.1, 2, 0.1), std::invalid_argument);

  Lattice two({2}, Bc::Neumann);
  CHECK_THROWS_AS(ModelParams(0.0, two, PinningScheme::uniform(1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1.0, two, PinningScheme::single(5, 1.0)),
                  std::invalid_argument);
}
