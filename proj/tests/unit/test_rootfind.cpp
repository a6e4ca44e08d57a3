#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "xjulia/error.hpp"
#include "xjulia/poly.hpp"
#include "xjulia/rng.hpp"
#include "xjulia/rootfind.hpp"

using namespace xjulia;

namespace {

// Greedy matching; returns the largest distance between matched roots.
double match_error(std::vector<cplx> got, const std::vector<cplx>& want) {
  double worst = 0.0;
  for (const auto& w : want) {
    auto it = std::min_element(got.begin(), got.end(), [&](cplx a, cplx b) { return std::abs(a - w) < std::abs(b - w); });
    worst = std::max(worst, std::abs(*it - w));
    got.erase(it);
  }
  return worst;
}

Poly chebyshev_t_monomial(int n) {
  std::vector<cplx> c(n + 1);
  c[n] = 1.0;
  return Poly::chebyshev(c).to_monomial();
}

}  // namespace

TEST_SUITE("rootfind") {

TEST_CASE("Degree follows the truncation rule") {
  CHECK(Poly::monomial({1.0, 2.0, 3.0}).degree() == 2);
  CHECK(Poly::monomial({1.0, 2.0, 1e-15}).degree() == 1);
  CHECK(Poly::monomial({1.0, 2.0, 1e-13}).degree() == 2);
  CHECK(Poly::monomial({0.0, 0.0}).is_zero());
  CHECK(Poly().degree() == 0);
}

TEST_CASE("Evaluation in both bases") {
  const auto p = Poly::monomial({1.0, -2.0, 0.5, 3.0});
  const auto c = p.to_chebyshev();
  for (cplx z : {cplx{0.3, 0.0}, cplx{-1.2, 0.7}, cplx{2.0, -3.0}}) {
    const cplx exact = 1.0 - 2.0 * z + 0.5 * z * z + 3.0 * z * z * z;
    CHECK(std::abs(p(z) - exact) <= 1e-13 * std::abs(exact));
    CHECK(std::abs(c(z) - exact) <= 1e-13 * (1.0 + std::abs(exact)));
    const auto [v, dv] = c.eval_with_derivative(z);
    CHECK(std::abs(v - exact) <= 1e-13 * (1.0 + std::abs(exact)));
    CHECK(std::abs(dv - (-2.0 + z + 9.0 * z * z)) <= 1e-12 * (1.0 + std::abs(dv)));
  }
  CHECK(std::abs(c.leading_coefficient() - 3.0) <= 1e-14);
  CHECK(std::abs(p.derivative()(cplx{2.0}) - (-2.0 + 2.0 + 36.0)) <= 1e-13);
}

namespace {

std::vector<cplx> random_coeffs(CounterRng& rng, int d) {
  std::vector<cplx> a(d + 1);
  for (auto& v : a) v = {2 * rng.uniform() - 1, 2 * rng.uniform() - 1};
  return a;
}

double rel_coeff_error(const Poly& back, const std::vector<cplx>& a) {
  REQUIRE(back.coeffs().size() == a.size());
  double scale = 0.0, err = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    scale = std::max(scale, std::abs(a[k]));
    err = std::max(err, std::abs(back.coeffs()[k] - a[k]));
  }
  return err / scale;
}

}  // namespace

TEST_CASE("Monomial -> Chebyshev -> monomial round-trips to 1e-10 up to degree 45") {
  CounterRng rng(11);
  for (int d : {1, 5, 20, 40, 45}) {
    const auto a = random_coeffs(rng, d);
    CHECK(rel_coeff_error(Poly::monomial(a).to_chebyshev().to_monomial(), a) <= 1e-10);
  }
}

TEST_CASE("Chebyshev -> monomial -> Chebyshev round-trips to 1e-10 at low degree") {
  CounterRng rng(12);
  for (int d : {1, 5, 10, 15}) {
    const auto a = random_coeffs(rng, d);
    CHECK(rel_coeff_error(Poly::chebyshev(a).to_monomial().to_chebyshev(), a) <= 1e-10);
  }
}

// Monomial coefficients of T_d grow like (1 + sqrt 2)^d, so rounding the intermediate
// coefficients to double is amplified by that factor; see the README.
TEST_CASE("Basis conversions round-trip to 1e-10 at degree 60" * doctest::may_fail()) {
  CounterRng rng(13);
  const auto a = random_coeffs(rng, 60);
  const double mono = rel_coeff_error(Poly::monomial(a).to_chebyshev().to_monomial(), a);
  const double cheb = rel_coeff_error(Poly::chebyshev(a).to_monomial().to_chebyshev(), a);
  MESSAGE("monomial origin " << mono << ", Chebyshev origin " << cheb);
  CHECK(mono <= 1e-10);
  CHECK(cheb <= 1e-10);
}

TEST_CASE("Product and shift") {
  const auto p = Poly::monomial({-1.0, 1.0});
  const auto q = Poly::monomial({1.0, 1.0});
  const auto pq = p * q;
  REQUIRE(pq.degree() == 2);
  CHECK(std::abs(pq.coeffs()[0] + 1.0) < 1e-15);
  CHECK(std::abs(pq.coeffs()[2] - 1.0) < 1e-15);
  const auto r = Poly::chebyshev({0.0, 0.0, 1.0}).minus_constant(2.0);
  CHECK(std::abs(r(cplx{1.0}) - (-1.0)) < 1e-15);
}

TEST_CASE("z^2 - 1") {
  auto zs = roots(Poly::monomial({-1.0, 0.0, 1.0}));
  CHECK(match_error(zs, {cplx{-1.0}, cplx{1.0}}) <= 1e-14);
}

TEST_CASE("Chebyshev T20 in monomial form") {
  const auto p = chebyshev_t_monomial(20);
  REQUIRE(p.degree() == 20);
  const auto zs = roots(p);
  std::vector<cplx> want;
  for (int k = 1; k <= 20; ++k) want.emplace_back(std::cos((2 * k - 1) * std::numbers::pi / 40));
  CHECK(match_error(zs, want) <= 1e-10);
}

TEST_CASE("Random degree-30 polynomial from known roots") {
  CounterRng rng(30);
  std::vector<cplx> want(30);
  for (auto& z : want) z = std::polar(0.2 + 0.8 * rng.uniform(), 2 * std::numbers::pi * rng.uniform());
  const auto p = Poly::from_roots(want);
  CHECK(std::abs(p.leading_coefficient() - 1.0) < 1e-15);
  const auto zs = roots(p);
  CHECK(match_error(zs, want) <= 1e-8);
  const Evaluator f = [&](cplx z) { return p.eval_with_derivative(z); };
  CHECK(worst_relative_residual(zs, f) <= 1e-8);
}

TEST_CASE("Chebyshev-basis roots near the interval") {
  std::vector<cplx> c(41);
  c[40] = 1.0;
  const auto zs = roots(Poly::chebyshev(c));
  std::vector<cplx> want;
  for (int k = 1; k <= 40; ++k) want.emplace_back(std::cos((2 * k - 1) * std::numbers::pi / 80));
  CHECK(match_error(zs, want) <= 1e-12);
}

TEST_CASE("Newton polishing never increases residuals") {
  const auto p = chebyshev_t_monomial(12);
  const Evaluator f = [&](cplx z) { return p.eval_with_derivative(z); };
  std::vector<cplx> zs;
  for (int k = 1; k <= 12; ++k) zs.emplace_back(std::cos((2 * k - 1) * std::numbers::pi / 24) + 1e-4);
  std::vector<double> before;
  for (auto z : zs) before.push_back(std::abs(p(z)));
  polish_roots(zs, f);
  for (std::size_t i = 0; i < zs.size(); ++i) CHECK(std::abs(p(zs[i])) <= before[i]);
  CHECK(worst_relative_residual(zs, f) <= 1e-12);
}

TEST_CASE("Errors") {
  CHECK_THROWS_AS(roots(Poly::monomial({3.0})), ConfigError);
  const auto p = chebyshev_t_monomial(25);
  RootOptions opts;
  opts.max_sweeps = 1;
  CHECK_THROWS_AS(roots(p, opts), NumericalError);
  const std::vector<cplx> two{0.0, 1.0};
  CHECK_THROWS_AS(roots(p, two), ConfigError);
}

TEST_CASE("Linear polynomials are solved directly") {
  const auto zs = roots(Poly::chebyshev({1.0, 2.0}));
  REQUIRE(zs.size() == 1);
  CHECK(std::abs(zs[0] + 0.5) < 1e-16);
}

}  // TEST_SUITE
