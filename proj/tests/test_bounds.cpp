#include "h22/bounds.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace h22;

TEST_CASE("one-site integral matches the bessel-k closed form") {
  // I(b) = sqrt(b/2pi) e^b * 2 K_0(b)
  for (double b : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0}) {
    const double expected =
        std::sqrt(b / (2.0 * M_PI)) * std::exp(b) * 2.0 * std::cyl_bessel_k(0.0, b);
    CHECK(oracle::rel_err(one_site_integral(b), expected) < 1e-8);
  }
  CHECK_THROWS_AS(one_site_integral(0.0), std::domain_error);
}

TEST_CASE("one-site integral bounds") {
  double prev = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double b = std::pow(10.0, -2.0 + 4.0 * k / 19.0);
    const double i = one_site_integral(b);
    CHECK(i < 1.0);
    CHECK(i > prev);  // monotone on the grid
    prev = i;
  }
  for (double b : {0.01, 0.05, 0.1})
    CHECK(one_site_integral(b) <= std::sqrt(b) * std::log(1.0 / b));
  CHECK(one_site_integral(100.0) > 0.98);
}

TEST_CASE("critical coupling") {
  CHECK(critical_beta(1).is_infinite);
  CHECK_THROWS_AS(critical_beta(0), std::domain_error);

  const CriticalBeta b2 = critical_beta(2);
  REQUIRE(!b2.is_infinite);
  CHECK(b2.value < 1.0 / 9.0);
  CHECK(std::abs(decay_ratio(2, b2.value) - 1.0) <= 1e-9);

  const CriticalBeta b3 = critical_beta(3);
  REQUIRE(!b3.is_infinite);
  CHECK(b3.value < 0.04);
  CHECK(std::abs(5.0 * one_site_integral(b3.value) * std::exp(4.0 * b3.value) - 1.0) <=
        1e-9);

  // the bracket endpoints genuinely straddle the root
  CHECK(decay_ratio(2, 1e-8) < 1.0);
  CHECK(decay_ratio(2, 1.0) > 1.0);
}

TEST_CASE("envelopes") {
  const BoundParams bp = BoundParams::with_default_prefactor(1, 1.0);
  const double r = decay_ratio(1, 1.0);
  CHECK(r == doctest::Approx(one_site_integral(1.0)));  // c_1 = 1
  CHECK(bp.c0 == doctest::Approx(2.0 * std::exp(3.0) / (1.0 - r)));

  CHECK(correlation_envelope(bp, 1.0, 1.0, 0.0) == doctest::Approx(2.0 * bp.c0));
  CHECK(correlation_envelope(bp, 0.5, 0.25, 0.0) == doctest::Approx(6.0 * bp.c0));
  CHECK(correlation_envelope(bp, 1.0, 1.0, 5.0) / correlation_envelope(bp, 1.0, 1.0, 4.0) ==
        doctest::Approx(r));
  CHECK(single_pinning_envelope(bp, 0.0) == doctest::Approx(bp.c0));
  CHECK(single_pinning_envelope(bp, 3.0) == doctest::Approx(bp.c0 * r * r * r));

  // strictly decreasing in one dimension for any beta
  for (double beta : {0.05, 1.0, 10.0}) {
    const BoundParams b1 = BoundParams::with_default_prefactor(1, beta);
    CHECK(single_pinning_envelope(b1, 7.0) < single_pinning_envelope(b1, 6.0));
  }

  // refusal above the critical coupling
  CHECK_THROWS_AS(BoundParams::with_default_prefactor(3, 0.5), std::domain_error);
  BoundParams manual;
  manual.d = 3;
  manual.beta = 0.5;
  manual.c0 = 1.0;
  CHECK_THROWS_AS(single_pinning_envelope(manual, 1.0), std::domain_error);
  CHECK_THROWS_AS(correlation_envelope(bp, 0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("coupling satisfying the small-beta entry condition stays localized") {
  // sqrt(b) ln(1/b) <= 1/(2d-1) forces r(b) < 1 up to documented slack
  for (int d : {2, 3}) {
    const double cap = 1.0 / (2.0 * d - 1.0);
    for (double b = 1e-4; b < 0.15; b *= 1.7) {
      if (std::sqrt(b) * std::log(1.0 / b) > cap) continue;
      CHECK(decay_ratio(d, b) < 1.05);
    }
  }
}

TEST_CASE("decay-rate fit") {
  SUBCASE("exact geometric data") {
    std::vector<DecayPoint> pts;
    for (int n = 0; n < 6; ++n) pts.push_back({double(n), 3.0 * std::pow(0.5, n), 0.0});
    const DecayFit fit = fit_decay_rate(pts);
    CHECK(fit.rate == doctest::Approx(std::log(2.0)));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)));
    CHECK(fit.rate_std_error == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(fit.n_used == 6);
  }

  SUBCASE("too few points") {
    CHECK_THROWS_AS(fit_decay_rate({{0.0, 1.0, 0.1}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_decay_rate({{0.0, 1.0, 0.1}, {1.0, 0.5, 0.1}, {2.0, -1.0, 0.1}}),
                    std::invalid_argument);  // one point excluded leaves two
  }

  SUBCASE("degenerate distances") {
    CHECK_THROWS_AS(
        fit_decay_rate({{1.0, 1.0, 0.1}, {1.0, 0.9, 0.1}, {1.0, 1.1, 0.1}}),
        std::invalid_argument);
  }

  SUBCASE("nonpositive values are excluded with a count") {
    std::vector<DecayPoint> pts;
    for (int n = 0; n < 6; ++n) pts.push_back({double(n), 2.0 * std::pow(0.4, n), 0.0});
    pts.push_back({7.0, -0.01, 0.0});
    const DecayFit fit = fit_decay_rate(pts);
    CHECK(fit.n_excluded == 1);
    CHECK(fit.rate == doctest::Approx(std::log(2.5)));
  }

  SUBCASE("noisy synthetic data recovers the rate within 3 sigma") {
    std::mt19937_64 rng(61);
    std::normal_distribution<double> noise(0.0, 1.0);
    const double true_rate = 0.8, amp = 2.0;
    int hits = 0;
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<DecayPoint> pts;
      for (int n = 0; n < 10; ++n) {
        const double v = amp * std::exp(-true_rate * n);
        const double sigma = 0.02 * v;
        pts.push_back({double(n), v + sigma * noise(rng), sigma});
      }
      const DecayFit fit = fit_decay_rate(pts);
      if (std::abs(fit.rate - true_rate) <= 3.0 * fit.rate_std_error) ++hits;
    }
    CHECK(hits >= 18);  // 3-sigma coverage, allow a rare miss
  }
}
