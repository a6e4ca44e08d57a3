#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "xjulia/error.hpp"
#include "xjulia/exceptional.hpp"
#include "xjulia/measures.hpp"
#include "xjulia/rng.hpp"

using namespace xjulia;

namespace {

constexpr double kPi = std::numbers::pi;

EmpiricalMeasure arcsine_points(int n) {
  const auto x = arcsine_quantiles(n);
  return EmpiricalMeasure::uniform(std::vector<cplx>(x.begin(), x.end()));
}

EmpiricalMeasure circle_points(int n) {
  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::polar(1.0, 2 * kPi * k / n);
  return EmpiricalMeasure::uniform(std::move(z));
}

}  // namespace

TEST_SUITE("measures") {

TEST_CASE("EmpiricalMeasure validation") {
  CHECK_THROWS_AS(EmpiricalMeasure({}, {}), ConfigError);
  CHECK_THROWS_AS(EmpiricalMeasure({cplx{0.0}}, {0.5}), ConfigError);
  CHECK_THROWS_AS(EmpiricalMeasure({cplx{0.0}, cplx{1.0}}, {1.5, -0.5}), ConfigError);
  CHECK_THROWS_AS(EmpiricalMeasure({cplx{0.0}, cplx{1.0}}, {1.0}), ConfigError);
  CHECK_NOTHROW(EmpiricalMeasure({cplx{0.0}, cplx{1.0}}, {0.25, 0.75}));
  CHECK_THROWS_AS(EmpiricalMeasure::uniform({}), ConfigError);
}

TEST_CASE("arcsine_cdf") {
  CHECK(arcsine_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(arcsine_cdf(std::sqrt(2.0) / 2) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(arcsine_cdf(-1.0) == 0.0);
  CHECK(arcsine_cdf(-3.0) == 0.0);
  CHECK(arcsine_cdf(1.0) == 1.0);
  double prev = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double f = arcsine_cdf(-1.0 + i / 100.0);
    CHECK(f >= prev);
    prev = f;
  }
}

TEST_CASE("Green function closed forms") {
  CHECK(std::abs(green_complement_interval(2.0) - std::log(2.0 + std::sqrt(3.0))) <= 1e-15);
  CHECK(green_complement_interval(0.5) == 0.0);
  CHECK(std::abs(green_complement_interval(cplx{0.0, 1.0}) - std::log(1.0 + std::sqrt(2.0))) <= 1e-15);
  CHECK(std::abs(green_complement_interval(-2.0) - std::log(2.0 + std::sqrt(3.0))) <= 1e-15);
  CHECK(green_complement_interval(cplx{3.0, 1.0}) == doctest::Approx(green_complement_interval(cplx{3.0, -1.0})));
}

TEST_CASE("Green function is continuous across the cut") {
  CounterRng rng(11);
  for (int i = 0; i < 100; ++i) {
    const double x = -1.0 + 2.0 * rng.uniform();
    const double up = green_complement_interval(cplx{x, 1e-9});
    const double down = green_complement_interval(cplx{x, -1e-9});
    CHECK(std::abs(up - down) <= 1e-8);
    CHECK(up <= 1e-6);
    CHECK(green_complement_interval(cplx{x, 1e-12}) <= up);
  }
}

TEST_CASE("log_potential examples") {
  const auto delta = EmpiricalMeasure::uniform({cplx{0.0}});
  CHECK(log_potential(delta, std::numbers::e) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::isinf(log_potential(delta, 0.0)));

  CHECK(std::abs(log_potential(circle_points(1024), 0.0)) <= 1e-3);

  const auto mu = arcsine_points(512);
  CHECK(std::abs(log_potential(mu, 2.0) - (std::log(2.0) - std::log(2.0 + std::sqrt(3.0)))) <= 5e-3);
}

TEST_CASE("log_potential of arcsine quantiles equals log 2 - g") {
  const auto mu = arcsine_points(512);
  CounterRng rng(3);
  int tested = 0;
  while (tested < 20) {
    const cplx z{-3.0 + 6.0 * rng.uniform(), -3.0 + 6.0 * rng.uniform()};
    const double dist = std::abs(z - cplx{std::clamp(z.real(), -1.0, 1.0), 0.0});
    if (dist < 0.5) continue;
    ++tested;
    CHECK(std::abs(log_potential(mu, z) - (std::log(2.0) - green_complement_interval(z))) <= 5e-3);
  }
}

TEST_CASE("Energy examples") {
  CHECK(std::abs(energy(arcsine_points(512)) - std::log(2.0)) <= 2e-2);
  CHECK(energy(EmpiricalMeasure::uniform({cplx{0.0}, cplx{1.0}})) == 0.0);
  CHECK(std::isinf(energy(EmpiricalMeasure::uniform({cplx{0.5}, cplx{0.5}}))));
  CHECK_THROWS_AS(energy(EmpiricalMeasure::uniform({cplx{0.5}})), ConfigError);
}

TEST_CASE("Circle energy: exact discrete value and the capacity band") {
  for (int n : {16, 256, 512, 2048}) {
    const double e = energy(circle_points(n));
    CHECK(std::abs(e - (-std::log(static_cast<double>(n)) / n)) <= 1e-12);
    if (n >= 512) CHECK(std::abs(e) <= 2e-2);
  }
}

TEST_CASE("Energy refinement trend") {
  double prev = std::abs(energy(arcsine_points(32)) - std::log(2.0));
  for (int n = 64; n <= 1024; n *= 2) {
    const double gap = std::abs(energy(arcsine_points(n)) - std::log(2.0));
    CHECK(gap <= prev + 1e-3);
    prev = gap;
  }
}

TEST_CASE("KS distance") {
  for (int n : {7, 100, 1000}) {
    CHECK(ks_distance_real(arcsine_points(n), arcsine_cdf) <= 0.5 / n + 1e-12);
  }
  CHECK(ks_distance_real(EmpiricalMeasure::uniform({cplx{0.0}}), arcsine_cdf) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ks_distance_real(EmpiricalMeasure::uniform({cplx{0.0, 0.5}}), arcsine_cdf), ConfigError);
  // ties are merged into one jump
  CHECK(ks_distance_real(EmpiricalMeasure::uniform({cplx{0.0}, cplx{0.0}}), arcsine_cdf) == doctest::Approx(0.5));
}

TEST_CASE("Chebyshev moments") {
  const auto m = chebyshev_moments(arcsine_points(4096), 6);
  REQUIRE(m.size() == 7);
  CHECK(m[0] == cplx{1.0});
  for (int k = 1; k <= 6; ++k) CHECK(std::abs(m[k]) <= 2e-3);

  const auto one = chebyshev_moments(EmpiricalMeasure::uniform({cplx{1.0}}), 10);
  for (const auto& v : one) CHECK(std::abs(v - 1.0) <= 1e-15);

  // T_2(z) = 2z^2 - 1
  const auto at_i = chebyshev_moments(EmpiricalMeasure::uniform({cplx{0.0, 1.0}}), 2);
  CHECK(std::abs(at_i[2] - cplx{-3.0}) <= 1e-15);

  CHECK_THROWS_AS(chebyshev_moments(arcsine_points(4), -1), ConfigError);
  CHECK_THROWS_AS(chebyshev_moments(arcsine_points(4), 33), ConfigError);
}

TEST_CASE("Pairwise sum is order-stable") {
  std::vector<double> v(1000);
  for (int i = 0; i < 1000; ++i) v[i] = 1.0 / (i + 1);
  double naive = 0.0;
  for (double x : v) naive += x;
  CHECK(pairwise_sum(v) == doctest::Approx(naive).epsilon(1e-14));
  CHECK(pairwise_sum(v) == pairwise_sum(v));
  CHECK(pairwise_sum(std::span<const double>{}) == 0.0);
}

TEST_CASE("Exceptional polynomials: (1/n) log|P_n| tends to g off [-1,1]") {
  const ExceptionalFamily fam(make_x1_preset(kPresetAlpha, kPresetBeta));
  const cplx pts[] = {cplx{2.0}, cplx{1.0, 1.0}, cplx{-3.0}, cplx{0.5, 2.0}};
  double prev = 1e300;
  for (int n : {10, 20, 40}) {
    double gap = 0.0;
    for (const auto& z : pts) {
      gap = std::max(gap, std::abs(std::log(std::abs(fam.eval(n, z))) / n - green_complement_interval(z)));
    }
    MESSAGE("n = " << n << " gap " << gap);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev <= 0.1);
}

}  // TEST_SUITE
