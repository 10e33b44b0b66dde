#include <doctest.h>

#include <cmath>
#include <numeric>

#include "nxent/error.hpp"
#include "nxent/probability.hpp"
#include "nxent/states.hpp"
#include "oracles.hpp"

using namespace nxent;

namespace {
double norm2(const FockVector& f) {
  double s = 0.0;
  for (const cplx& c : f.coeffs()) s += std::norm(c);
  return s;
}
}  // namespace

TEST_CASE("fock_state") {
  const FockVector v = fock_state(0, 5);
  REQUIRE(v.truncation() == 5);
  for (int n = 0; n <= 5; ++n) CHECK(v[n] == cplx(n == 0 ? 1.0 : 0.0));
  const FockVector t = fock_state(3, 3);
  CHECK(t[3] == cplx(1.0));
  CHECK(t.support() == 3);
  CHECK_THROWS_AS(fock_state(4, 3), DomainError);
  CHECK_THROWS_AS(fock_state(-1, 3), DomainError);
}

TEST_CASE("FockVector validation") {
  CHECK_THROWS_AS(FockVector({}), DomainError);
  CHECK_THROWS_AS(FockVector({cplx(0.5), cplx(0.5)}), DomainError);
  CHECK_THROWS_AS(FockVector({cplx(NAN), cplx(0.0)}), DomainError);
  CHECK_THROWS_AS(FockVector::normalized({cplx(0.0), cplx(0.0)}), DomainError);
  const FockVector f = FockVector::normalized({cplx(3.0), cplx(0.0, 4.0)});
  CHECK(f[0].real() == doctest::Approx(0.6));
  CHECK(f[1].imag() == doctest::Approx(0.8));
}

TEST_CASE("coherent_state") {
  const FockVector z = coherent_state(0.0, 10);
  CHECK(z[0] == cplx(1.0));
  for (int n = 1; n <= 10; ++n) CHECK(z[n] == cplx(0.0));

  const FockVector one = coherent_state(1.0, 40);
  double mean = 0.0;
  for (int n = 0; n <= 40; ++n) mean += n * std::norm(one[n]);
  // Untruncated oracle: sum over 200 Poisson terms.
  double oracle_mean = 0.0;
  for (int n = 0; n < 200; ++n) oracle_mean += n * oracle::poisson(1.0, n);
  CHECK(std::abs(mean - oracle_mean) < 1e-6);
  CHECK(std::abs(mean - 1.0) < 1e-6);

  const FockVector two_i = coherent_state(cplx(0.0, 2.0), 60);
  CHECK(std::abs(norm2(two_i) - 1.0) < 1e-12);
  for (int n = 0; n <= 60; ++n) CHECK(std::abs(std::norm(two_i[n]) - oracle::poisson(4.0, n)) < 1e-6);

  CHECK_THROWS_AS(coherent_state(2.0, 10), DomainError);
  CHECK_NOTHROW(coherent_state(2.0, 16));
}

TEST_CASE("random_state") {
  const FockVector a = random_state(42, 7), b = random_state(42, 7), c = random_state(43, 7);
  for (int n = 0; n <= 7; ++n) CHECK(a[n] == b[n]);
  bool differs = false;
  for (int n = 0; n <= 7; ++n) differs = differs || a[n] != c[n];
  CHECK(differs);
  CHECK(random_state(1, 0)[0] != cplx(0.0));

  // Uniform sphere in C^4: E[|c_0|^2] = 1/4, Var = 3/80.
  const int samples = 10000;
  double sum = 0.0;
  for (int s = 0; s < samples; ++s) sum += std::norm(random_state(s, 3)[0]);
  const double se = std::sqrt(3.0 / 80.0 / samples);
  CHECK(std::abs(sum / samples - 0.25) < 3 * se);
}

TEST_CASE("mixed") {
  const FockVector f = random_state(3, 4);
  const MixedState trivial = mixed({{1.0, f}});
  CHECK(trivial.is_pure());
  const MixedState half = mixed({{0.5, fock_state(0, 1)}, {0.5, fock_state(1, 1)}});
  const DiscreteDist s = number_dist(half);
  CHECK(s[0] == doctest::Approx(0.5));
  CHECK(s[1] == doctest::Approx(0.5));
  CHECK_THROWS_AS(mixed({{0.7, f}, {0.4, random_state(4, 4)}}), DomainError);
  CHECK_THROWS_AS(mixed({}), DomainError);
  CHECK_THROWS_AS(mixed({{1.2, f}, {-0.2, f}}), DomainError);
  CHECK_THROWS_AS(mixed({{1.0, f}, {0.0, f}}), DomainError);
}

TEST_CASE("property: constructed states have unit norm") {
  gen::Gen g(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = g.integer(0, 40);
    CHECK(std::abs(norm2(g.state(n)) - 1.0) <= 1e-12);
    CHECK(std::abs(norm2(g.sparse_state(n)) - 1.0) <= 1e-12);
    const double r = g.uniform(0.0, std::sqrt(n / 4.0));
    CHECK(std::abs(norm2(coherent_state(std::polar(r, g.uniform(0, 6.28)), n)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("property: mixture number distribution is the weighted average") {
  gen::Gen g(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = g.integer(0, 20);
    const MixedState m = g.mixture(n, g.integer(1, 5));
    const DiscreteDist s = number_dist(m);
    for (int k = 0; k <= n; ++k) {
      double expect = 0.0;
      for (const auto& c : m.components()) expect += c.weight * std::norm(c.state[k]);
      CHECK(std::abs(s[k] - expect) < 1e-15);
    }
  }
}
