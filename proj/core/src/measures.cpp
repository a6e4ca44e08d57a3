#include "xjulia/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "xjulia/error.hpp"

namespace xjulia {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

cplx pairwise_sum_cplx(std::span<const cplx> v) {
  if (v.size() <= 8) {
    cplx s{};
    for (const auto& x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum_cplx(v.first(half)) + pairwise_sum_cplx(v.subspan(half));
}

}  // namespace

EmpiricalMeasure::EmpiricalMeasure(std::vector<cplx> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw ConfigError("points", "measure needs at least one point");
  if (points_.size() != weights_.size()) throw ConfigError("weights", "one weight per point required");
  for (double w : weights_) {
    if (!(w > 0.0)) throw ConfigError("weights", "weights must be positive");
  }
  const double total = pairwise_sum(weights_);
  if (std::abs(total - 1.0) > 1e-12) throw ConfigError("weights", "weights must sum to 1");
}

EmpiricalMeasure EmpiricalMeasure::uniform(std::vector<cplx> points) {
  const std::size_t n = points.size();
  if (n == 0) throw ConfigError("points", "measure needs at least one point");
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  return {std::move(points), std::move(w)};
}

double arcsine_cdf(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return 0.5 + std::asin(x) / std::numbers::pi;
}

std::vector<double> arcsine_quantiles(int count) {
  std::vector<double> x(count);
  for (int k = 1; k <= count; ++k) x[k - 1] = -std::cos(std::numbers::pi * (k - 0.5) / count);
  return x;
}

double green_complement_interval(cplx z) {
  if (z.imag() == 0.0 && std::abs(z.real()) <= 1.0) return 0.0;
  const cplx root = std::sqrt(z * z - 1.0);
  const double g = std::max(std::abs(z + root), std::abs(z - root));
  return std::max(0.0, std::log(g));
}

double log_potential(const EmpiricalMeasure& mu, cplx z) {
  const auto p = mu.points();
  const auto w = mu.weights();
  std::vector<double> terms(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = std::abs(p[i] - z);
    if (d < 1e-300) return kInf;
    terms[i] = -w[i] * std::log(d);
  }
  return pairwise_sum(terms);
}

double energy(const EmpiricalMeasure& mu) {
  const auto p = mu.points();
  const auto w = mu.weights();
  if (p.size() < 2) throw ConfigError("points", "energy needs at least two points");
  std::vector<double> rows(p.size());
  std::vector<double> terms;
  terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    terms.clear();
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i == j) continue;
      const double d = std::abs(p[i] - p[j]);
      if (d < 1e-300) return kInf;
      terms.push_back(-w[j] * std::log(d));
    }
    rows[i] = w[i] * pairwise_sum(terms);
  }
  return pairwise_sum(rows);
}

double ks_distance_real(const EmpiricalMeasure& mu, const std::function<double(double)>& cdf) {
  const auto p = mu.points();
  const auto w = mu.weights();
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  for (const auto& z : p) {
    if (std::abs(z.imag()) > 1e-6) {
      throw ConfigError("points", "KS distance needs real support; use chebyshev_moments for complex measures");
    }
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a].real() < p[b].real(); });
  double below = 0.0, sup = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double x = p[order[i]].real();
    double jump = 0.0;
    while (i < order.size() && p[order[i]].real() == x) jump += w[order[i++]];
    const double f = cdf(x);
    sup = std::max({sup, std::abs(f - below), std::abs(below + jump - f)});
    below += jump;
  }
  return std::min(1.0, sup);
}

std::vector<cplx> chebyshev_moments(const EmpiricalMeasure& mu, int k_max) {
  if (k_max < 0 || k_max > 32) throw ConfigError("k_max", "must lie in [0, 32]");
  const auto p = mu.points();
  const auto w = mu.weights();
  std::vector<std::vector<cplx>> terms(k_max + 1, std::vector<cplx>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    cplx t_prev = 1.0, t = p[i];
    for (int k = 1; k <= k_max; ++k) {
      terms[k][i] = w[i] * t;
      const cplx t_next = 2.0 * p[i] * t - t_prev;
      t_prev = t;
      t = t_next;
    }
  }
  std::vector<cplx> m(k_max + 1);
  m[0] = 1.0;
  for (int k = 1; k <= k_max; ++k) m[k] = pairwise_sum_cplx(terms[k]);
  return m;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace xjulia
