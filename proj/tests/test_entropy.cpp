#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nxent/entropy.hpp"
#include "nxent/error.hpp"
#include "oracles.hpp"

using namespace nxent;

namespace {
const double kLn2Pi = std::log(2.0 * std::numbers::pi);
}

TEST_CASE("EntropyOrder") {
  CHECK_THROWS_AS(EntropyOrder(0.0), DomainError);
  CHECK_THROWS_AS(EntropyOrder(-1.0), DomainError);
  CHECK_THROWS_AS(EntropyOrder(NAN), DomainError);
  CHECK(EntropyOrder(1.0).is_shannon());
  CHECK_FALSE(EntropyOrder(1.0 + 1e-12).is_shannon());
}

TEST_CASE("renyi_discrete examples") {
  const DiscreteDist det({0.0, 1.0, 0.0});
  const DiscreteDist uni({0.25, 0.25, 0.25, 0.25});
  for (double a : {0.3, 0.5, 1.0, 2.0, 7.0}) {
    CHECK(renyi_discrete(det, EntropyOrder(a)) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(renyi_discrete(uni, EntropyOrder(a)) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  }
  CHECK(renyi_discrete(DiscreteDist({0.5, 0.5}), EntropyOrder(2.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("tsallis_discrete examples") {
  const DiscreteDist det({1.0, 0.0});
  for (double a : {0.5, 1.0, 2.0}) CHECK(tsallis_discrete(det, EntropyOrder(a)) == doctest::Approx(0.0));
  CHECK(tsallis_discrete(DiscreteDist({0.5, 0.5}), EntropyOrder(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
  gen::Gen g(3);
  for (int trial = 0; trial < 50; ++trial) {
    const DiscreteDist s(g.distribution(g.integer(1, 40)));
    const double h1 = tsallis_discrete(s, EntropyOrder(1.0));
    for (double d : {-1e-5, 1e-5}) CHECK(std::abs(tsallis_discrete(s, EntropyOrder(1.0 + d)) - h1) <= 1e-4);
  }
}

TEST_CASE("alpha_log examples") {
  CHECK(alpha_log(1.0, EntropyOrder(1.0)) == 0.0);
  CHECK(alpha_log(2.0 * std::numbers::pi, EntropyOrder(1.0)) == doctest::Approx(kLn2Pi).epsilon(1e-15));
  CHECK(alpha_log(2.0 * std::numbers::pi, EntropyOrder(2.0)) ==
        doctest::Approx(1.0 - 1.0 / (2.0 * std::numbers::pi)).epsilon(1e-15));
  CHECK(alpha_log(2.0 * std::numbers::pi, EntropyOrder(2.0)) == doctest::Approx(0.840845).epsilon(1e-6));
  for (double a : {0.2, 0.7, 1.0, 3.0, 50.0}) CHECK(alpha_log(1.0, EntropyOrder(a)) == 0.0);
  CHECK_THROWS_AS(alpha_log(0.0, EntropyOrder(2.0)), DomainError);
  CHECK_THROWS_AS(alpha_log(-1.0, EntropyOrder(1.0)), DomainError);
}

TEST_CASE("zero probabilities contribute nothing for any order") {
  const DiscreteDist s({0.5, 0.0, 0.5, 1e-320});
  CHECK(power_sum(s, EntropyOrder(0.1)) == doctest::Approx(2.0 * std::pow(0.5, 0.1)));
  CHECK(std::isfinite(renyi_discrete(s, EntropyOrder(0.01))));
  CHECK(shannon_discrete(s) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("continuous functionals of the vacuum") {
  // Wide enough for the tail of w^0.5.
  const PhaseDensity w = density(fock_state(0, 0), 0, PhaseGrid::symmetric(12.0, 512));
  CHECK(std::abs(norm_functional_continuous(w, EntropyOrder(1.0)) - 1.0) < 2e-6);
  CHECK(norm_functional_continuous(w, EntropyOrder(2.0)) ==
        doctest::Approx(1.0 / std::sqrt(4.0 * std::numbers::pi)).epsilon(1e-9));
  CHECK(norm_functional_continuous(w, EntropyOrder(2.0)) == doctest::Approx(0.2821).epsilon(1e-4));
  const double half = std::pow(oracle::vacuum_power_integral(0.5), 2.0);
  CHECK(half == doctest::Approx(8.0 * std::numbers::pi).epsilon(1e-14));
  CHECK(norm_functional_continuous(w, EntropyOrder(0.5)) == doctest::Approx(half).epsilon(1e-8));
  for (double a : {0.6, 0.8, 1.5, 3.0, 10.0})
    CHECK(power_integral(w, EntropyOrder(a)) == doctest::Approx(oracle::vacuum_power_integral(a)).epsilon(1e-9));

  CHECK(renyi_continuous(w, EntropyOrder(2.0)) == doctest::Approx(kLn2Pi + std::log(2.0)).epsilon(1e-9));
  CHECK(renyi_continuous(w, EntropyOrder(2.0)) == doctest::Approx(2.5310).epsilon(1e-4));
  CHECK(std::abs(renyi_continuous(w, EntropyOrder(1.0)) - (kLn2Pi + 1.0)) < 1e-8);
  CHECK(tsallis_continuous(w, EntropyOrder(2.0)) == doctest::Approx(1.0 - 1.0 / (4.0 * std::numbers::pi)).epsilon(1e-9));
}

TEST_CASE("tail control for orders below one") {
  const PhaseDensity tight = density(fock_state(0, 0), 0, PhaseGrid::symmetric(9.0, 128));
  try {
    power_integral(tight, EntropyOrder(0.3));
    FAIL("expected TailError");
  } catch (const TailError& e) {
    CHECK(e.suggested_extent() > 9.0);
    const PhaseDensity wide = density(fock_state(0, 0), 0, PhaseGrid::symmetric(e.suggested_extent(), 256));
    CHECK_NOTHROW(check_tail(wide, EntropyOrder(0.3)));
    CHECK(power_integral(wide, EntropyOrder(0.3)) == doctest::Approx(oracle::vacuum_power_integral(0.3)).epsilon(1e-8));
  }
  CHECK_NOTHROW(power_integral(tight, EntropyOrder(1.5)));
}

TEST_CASE("property: Renyi entropy is non-increasing in the order") {
  gen::Gen g(12);
  for (int trial = 0; trial < 200; ++trial) {
    const DiscreteDist s(g.distribution(g.integer(1, 30)));
    double prev = INFINITY;
    for (double a : {0.1, 0.3, 0.5, 0.8, 1.0, 1.2, 2.0, 3.5, 8.0, 40.0}) {
      const double r = renyi_discrete(s, EntropyOrder(a));
      REQUIRE(r >= -1e-14);
      REQUIRE(r <= prev + 1e-12);
      prev = r;
    }
  }
}

TEST_CASE("property: both families meet Shannon at order one") {
  gen::Gen g(13);
  for (int trial = 0; trial < 200; ++trial) {
    const DiscreteDist s(g.distribution(g.integer(1, 30)));
    const double h = shannon_discrete(s);
    // First-order expansions in d = alpha - 1:
    // H_alpha = H - d/2 sum p ln^2 p,  R_alpha = H - d/2 Var(ln p).
    double m2 = 0.0;
    for (double p : s.probs())
      if (p > 0.0) m2 += p * std::log(p) * std::log(p);
    const double var = m2 - h * h;
    for (double d : {-1e-6, 1e-6}) {
      REQUIRE(std::abs(renyi_discrete(s, EntropyOrder(1.0 + d)) - (h - 0.5 * d * var)) <= 1e-9);
      REQUIRE(std::abs(tsallis_discrete(s, EntropyOrder(1.0 + d)) - (h - 0.5 * d * m2)) <= 1e-9);
    }
  }
}

TEST_CASE("property: continuous Renyi entropy of a generated density is at least ln 2 pi") {
  gen::Gen g(14);
  for (int trial = 0; trial < 4; ++trial) {
    const FockVector f = g.state(g.integer(0, 10));
    const int n0 = g.integer(0, 2);
    const PhaseDensity w = density(f, n0, PhaseGrid::symmetric(TailEnvelope(f, n0).suggested_extent(0.6, kTailThreshold), 160));
    for (double a : {0.6, 1.0, 2.0, 6.0}) CHECK(renyi_continuous(w, EntropyOrder(a)) >= kLn2Pi - 1e-6);
  }
}
