#include "xjulia/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "xjulia/error.hpp"

namespace xjulia {

std::vector<cplx> initial_guesses(const Poly& p) {
  const int d = p.degree();
  std::vector<cplx> z(d);
  if (d == 0) return z;
  const double offset = 0.4;
  if (p.basis() == Basis::chebyshev) {
    const double rho = 1.3;
    const double a = 0.5 * (rho + 1.0 / rho), b = 0.5 * (rho - 1.0 / rho);
    for (int k = 0; k < d; ++k) {
      const double t = 2.0 * std::numbers::pi * k / d + std::numbers::pi / (2.0 * d) + offset;
      z[k] = {a * std::cos(t), b * std::sin(t)};
    }
    return z;
  }
  const auto c = p.coeffs();
  const double lead = std::abs(c[d]);
  double cauchy = 0.0;
  for (int k = 0; k < d; ++k) cauchy = std::max(cauchy, std::abs(c[k]) / lead);
  cauchy += 1.0;
  double r = std::abs(c[0]) > 0.0 ? std::pow(std::abs(c[0]) / lead, 1.0 / d) : 0.5;
  r = std::clamp(r, 1e-3, cauchy);
  for (int k = 0; k < d; ++k) {
    const double t = 2.0 * std::numbers::pi * k / d + std::numbers::pi / (2.0 * d) + offset;
    z[k] = std::polar(r, t);
  }
  return z;
}

std::vector<cplx> roots(const Poly& p, const RootOptions& options) {
  const auto guesses = initial_guesses(p);
  return roots(p, guesses, options);
}

std::vector<cplx> roots(const Poly& p, std::span<const cplx> initial, const RootOptions& options) {
  const int d = p.degree();
  if (d < 1) throw ConfigError("poly", "root finding needs degree >= 1");
  if (static_cast<int>(initial.size()) != d) {
    throw ConfigError("initial", "need exactly one starting point per root");
  }
  if (d == 1) {
    // a0 + a1 T_1 and a0 + a1 z share the same root
    const auto c = p.coeffs();
    return {-c[0] / c[1]};
  }

  std::vector<cplx> z(initial.begin(), initial.end());
  std::vector<char> done(d, 0);
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    bool all_done = true;
    for (int i = 0; i < d; ++i) {
      if (done[i]) continue;
      const auto [f, df] = p.eval_with_derivative(z[i]);
      if (std::abs(f) <= p.eval_error_bound(z[i])) {
        done[i] = 1;
        continue;
      }
      all_done = false;
      cplx sum{};
      for (int j = 0; j < d; ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      cplx corr;
      if (df == cplx{}) {
        corr = std::polar(1e-8 * (1.0 + std::abs(z[i])), 0.7 * i);
      } else {
        const cplx newton = f / df;
        corr = newton / (1.0 - newton * sum);
      }
      z[i] -= corr;
      if (std::abs(corr) <= options.tol * (1.0 + std::abs(z[i]))) done[i] = 1;
    }
    if (all_done) return z;
  }

  double worst = 0.0;
  for (const auto& zi : z) worst = std::max(worst, std::abs(p(zi)));
  throw NumericalError("roots: Aberth iteration did not converge after " +
                       std::to_string(options.max_sweeps) +
                       " sweeps; worst residual " + std::to_string(worst));
}

void polish_roots(std::span<cplx> zs, const Evaluator& f, int max_iter) {
  for (auto& z : zs) {
    auto [v, dv] = f(z);
    for (int it = 0; it < max_iter && v != cplx{} && dv != cplx{}; ++it) {
      const cplx trial = z - v / dv;
      const auto [tv, tdv] = f(trial);
      if (!(std::abs(tv) < std::abs(v))) break;
      z = trial;
      v = tv;
      dv = tdv;
    }
  }
}

double circle_max(const Evaluator& f, double radius) {
  constexpr int kSamples = 64;
  double best = 0.0;
  for (int k = 0; k < kSamples; ++k) {
    best = std::max(best, std::abs(f(std::polar(radius, 2.0 * std::numbers::pi * (k + 0.5) / kSamples)).first));
  }
  return best;
}

double worst_relative_residual(std::span<const cplx> zs, const Evaluator& f) {
  double worst = 0.0;
  for (const auto& z : zs) {
    const double scale = circle_max(f, 1.0 + std::abs(z));
    const double r = std::abs(f(z).first);
    worst = std::max(worst, scale > 0.0 ? r / scale : r);
  }
  return worst;
}

}  // namespace xjulia
