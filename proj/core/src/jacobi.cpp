#include "xjulia/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "xjulia/error.hpp"

namespace xjulia {

JacobiParams::JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta), mass_(0.0) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) throw ConfigError("alpha", "must be finite and > -1");
  if (!(beta > -1.0) || !std::isfinite(beta)) throw ConfigError("beta", "must be finite and > -1");
  mass_ = std::exp((alpha + beta + 1.0) * std::numbers::ln2 + std::lgamma(alpha + 1.0) +
                   std::lgamma(beta + 1.0) - std::lgamma(alpha + beta + 2.0));
}

double JacobiParams::diag(int k) const noexcept {
  const double s = alpha_ + beta_;
  if (k == 0) return (beta_ - alpha_) / (s + 2.0);
  return (beta_ * beta_ - alpha_ * alpha_) / ((2.0 * k + s) * (2.0 * k + s + 2.0));
}

double JacobiParams::offdiag(int k) const noexcept {
  const double a = alpha_, b = beta_, s = a + b;
  double beta_k;
  if (k <= 0) return 0.0;  // the general formula is 0/0 at s = 0 or s = -1
  if (k == 1) {
    beta_k = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
  } else {
    const double t = 2.0 * k + s;
    beta_k = 4.0 * k * (k + a) * (k + b) * (k + s) / (t * t * (t + 1.0) * (t - 1.0));
  }
  return std::sqrt(beta_k);
}

double JacobiParams::weight(double x) const noexcept {
  return std::pow(1.0 - x, alpha_) * std::pow(1.0 + x, beta_);
}

namespace {

template <class T>
T recurrence(const JacobiParams& p, int n, T x) {
  T prev{0.0};
  T cur = T{1.0 / std::sqrt(p.mass())};
  for (int k = 0; k < n; ++k) {
    T next = ((x - p.diag(k)) * cur - p.offdiag(k) * prev) / p.offdiag(k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

// p_n, p_n' and sum_{j<n} p_j^2 at a real point, in one sweep.
struct RecurrenceValues {
  double p;
  double dp;
  double sum_sq;
};

RecurrenceValues recurrence_with_derivative(const JacobiParams& jp, int n, double x) {
  double p_prev = 0.0, p = 1.0 / std::sqrt(jp.mass());
  double d_prev = 0.0, d = 0.0;
  double sum_sq = 0.0;
  for (int k = 0; k < n; ++k) {
    sum_sq += p * p;
    const double a = jp.diag(k), bk = jp.offdiag(k), bk1 = jp.offdiag(k + 1);
    const double p_next = ((x - a) * p - bk * p_prev) / bk1;
    const double d_next = ((x - a) * d + p - bk * d_prev) / bk1;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
  }
  return {p, d, sum_sq};
}

double christoffel_weight(const JacobiParams& jp, int n, double x) {
  return 1.0 / recurrence_with_derivative(jp, n, x).sum_sq;
}

bool newton_nodes(const JacobiParams& jp, int n, std::vector<double>& nodes) {
  const double rho = n + 0.5 * (jp.alpha() + jp.beta() + 1.0);
  nodes.resize(n);
  for (int k = 1; k <= n; ++k) {
    const double theta = (k + 0.5 * jp.alpha() - 0.25) * std::numbers::pi / rho;
    double x = std::cos(std::clamp(theta, 0.0, std::numbers::pi));
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      const auto v = recurrence_with_derivative(jp, n, x);
      if (v.dp == 0.0) break;
      const double dx = v.p / v.dp;
      x -= dx;
      if (!(std::abs(x) < 1.0)) break;
      if (std::abs(dx) <= 1e-15 * (1.0 + std::abs(x))) {
        converged = true;
        break;
      }
    }
    if (!converged) return false;
    nodes[k - 1] = x;
  }
  std::sort(nodes.begin(), nodes.end());
  for (int k = 0; k < n; ++k) {
    if (!(std::abs(nodes[k]) < 1.0)) return false;
    if (k > 0 && !(nodes[k] > nodes[k - 1] + 1e-14)) return false;
  }
  return true;
}

// Scan x = cos(theta) on a fine angular grid, bisect every sign change, Newton-polish.
void bisection_nodes(const JacobiParams& jp, int n, std::vector<double>& nodes) {
  nodes.clear();
  const int samples = 64 * n + 64;
  auto f = [&](double x) { return recurrence_with_derivative(jp, n, x).p; };
  double x_prev = std::cos(std::numbers::pi * 0.5 / samples);
  double f_prev = f(x_prev);
  for (int i = 1; i < samples; ++i) {
    const double x = std::cos(std::numbers::pi * (i + 0.5) / samples);
    const double fx = f(x);
    if (fx == 0.0) {
      nodes.push_back(x);
    } else if ((fx < 0.0) != (f_prev < 0.0) && f_prev != 0.0) {
      double lo = x, hi = x_prev, flo = fx;
      for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      nodes.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    f_prev = fx;
    if (static_cast<int>(nodes.size()) > n) break;
  }
  std::sort(nodes.begin(), nodes.end());
  if (static_cast<int>(nodes.size()) != n) {
    throw NumericalError("gauss_jacobi_rule: node " + std::to_string(nodes.size()) +
                         " of " + std::to_string(n) + " not found by bisection");
  }
  for (int k = 1; k < n; ++k) {
    if (!(nodes[k] > nodes[k - 1])) {
      throw NumericalError("gauss_jacobi_rule: node " + std::to_string(k) + " is not separated");
    }
  }
}

}  // namespace

double eval_orthonormal_jacobi(const JacobiParams& params, int n, double x) {
  return n < 0 ? 0.0 : recurrence(params, n, x);
}

cplx eval_orthonormal_jacobi(const JacobiParams& params, int n, cplx z) {
  return n < 0 ? cplx{} : recurrence(params, n, z);
}

double eval_jacobi_derivative(const JacobiParams& params, int n, double x) {
  if (n <= 0) return 0.0;
  const double s = params.alpha() + params.beta();
  return std::sqrt(n * (n + s + 1.0)) * recurrence(params.shifted(1, 1), n - 1, x);
}

cplx eval_jacobi_derivative(const JacobiParams& params, int n, cplx z) {
  if (n <= 0) return {};
  const double s = params.alpha() + params.beta();
  return std::sqrt(n * (n + s + 1.0)) * recurrence(params.shifted(1, 1), n - 1, z);
}

cplx eval_jacobi_second_derivative(const JacobiParams& params, int n, cplx z) {
  if (n <= 1) return {};
  const double s = params.alpha() + params.beta();
  return std::sqrt(n * (n + s + 1.0)) * std::sqrt((n - 1.0) * (n + s + 2.0)) *
         recurrence(params.shifted(2, 2), n - 2, z);
}

double scaled_orthonormal_jacobi(const JacobiParams& p, int n, double t) {
  if (n < 0) return 0.0;
  const double inv = 1.0 / t;
  double prev = 0.0, cur = 1.0 / std::sqrt(p.mass());
  for (int k = 0; k < n; ++k) {
    const double next = ((1.0 - p.diag(k) * inv) * cur - p.offdiag(k) * prev * inv * inv) /
                        p.offdiag(k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double scaled_jacobi_derivative(const JacobiParams& params, int n, double t) {
  if (n <= 0) return 0.0;
  const double s = params.alpha() + params.beta();
  return std::sqrt(n * (n + s + 1.0)) * scaled_orthonormal_jacobi(params.shifted(1, 1), n - 1, t);
}

double leading_coeff_jacobi(const JacobiParams& params, int n) {
  double gamma = 1.0 / std::sqrt(params.mass());
  for (int k = 1; k <= n; ++k) gamma /= params.offdiag(k);
  return gamma;
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
  return sum;
}

QuadratureRule gauss_jacobi_rule(const JacobiParams& params, int order) {
  if (order < 1) throw ConfigError("order", "quadrature order must be >= 1");
  QuadratureRule rule{{}, {}, params};
  if (!newton_nodes(params, order, rule.nodes)) bisection_nodes(params, order, rule.nodes);
  rule.weights.resize(rule.nodes.size());
  for (int k = 0; k < order; ++k) {
    rule.weights[k] = christoffel_weight(params, order, rule.nodes[k]);
    if (!(rule.weights[k] > 0.0) || !std::isfinite(rule.weights[k])) {
      throw NumericalError("gauss_jacobi_rule: invalid weight at node " + std::to_string(k));
    }
  }
  return rule;
}

}  // namespace xjulia
