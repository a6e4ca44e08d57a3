#include "xjulia/exceptional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "xjulia/error.hpp"
#include "xjulia/rng.hpp"
#include "xjulia/rootfind.hpp"

namespace xjulia {

namespace {

constexpr int kSigmaCacheSize = kDegreeCap + 16;

std::vector<double> trimmed(std::span<const double> c) {
  std::vector<double> out(c.begin(), c.end());
  while (!out.empty() && out.back() == 0.0) out.pop_back();
  return out;
}

// Divide a real monomial polynomial by (x - r); the remainder is dropped.
std::vector<double> deflate(const std::vector<double>& c, double r) {
  const int d = static_cast<int>(c.size()) - 1;
  std::vector<double> q(d);
  double carry = c[d];
  for (int k = d - 1; k >= 0; --k) {
    q[k] = carry;
    carry = c[k] + r * carry;
  }
  return q;
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double abs_sum(const std::vector<double>& c) {
  double s = 0.0;
  for (double v : c) s += std::abs(v);
  return s;
}

// Scaled evaluation q(t) / t^shift for a real monomial polynomial.
double scaled_poly(const Poly& p, double t, int shift) {
  const auto c = p.coeffs();
  double acc = 0.0;
  for (int k = p.degree(); k >= 0; --k) acc += c[k].real() * std::pow(t, k - shift);
  return acc;
}

}  // namespace

std::vector<cplx> DarbouxData::pole_set() const {
  if (b_tilde.degree() == 0) return {};
  return roots(b_tilde);
}

DarbouxData make_darboux_data(const JacobiParams& source, std::span<const double> b_in,
                              std::span<const double> bw_in, double lambda_tilde,
                              std::optional<int> eps1, std::optional<int> eps2) {
  auto b = trimmed(b_in);
  auto bw = trimmed(bw_in);
  if (b.empty()) throw ConfigError("b", "must be a nonzero polynomial");
  if (std::abs(b.back() - 1.0) > 1e-12) throw ConfigError("b", "must be monic");
  const int deg_b = static_cast<int>(b.size()) - 1;
  const int deg_bw = static_cast<int>(bw.size()) - 1;  // -1 for the zero polynomial
  if (deg_b < deg_bw + 1) throw ConfigError("bw", "need deg b >= deg bw + 1");
  if (!std::isfinite(lambda_tilde)) throw ConfigError("lambda_tilde", "must be finite");
  if (bw.empty()) bw.push_back(0.0);

  if (deg_b >= 1) {
    for (const auto& r : roots(Poly::real_monomial(b))) {
      if (std::abs(r.imag()) <= 1e-8 && std::abs(r.real()) < 1.0 - 1e-12) {
        throw ConfigError("b", "has a zero inside (-1,1) at " + std::to_string(r.real()));
      }
    }
  }

  // Strip the endpoint factors (x-1) and (x+1).
  std::vector<double> bt = b;
  int k1 = 0, k2 = 0;
  const double tol = 1e-12 * abs_sum(b);
  if (static_cast<int>(bt.size()) > 1 && std::abs(horner(bt, 1.0)) <= tol) {
    bt = deflate(bt, 1.0);
    k1 = 1;
  }
  if (static_cast<int>(bt.size()) > 1 && std::abs(horner(bt, -1.0)) <= tol) {
    bt = deflate(bt, -1.0);
    k2 = 1;
  }
  if (static_cast<int>(bt.size()) > 1 &&
      (std::abs(horner(bt, 1.0)) <= tol || std::abs(horner(bt, -1.0)) <= tol)) {
    throw ConfigError("b", "endpoint zeros of b must be simple");
  }
  const int e1 = 1 - 2 * k1, e2 = 1 - 2 * k2;
  if (eps1 && *eps1 != e1) throw ConfigError("eps1", "inconsistent with the factor (1-x) of b");
  if (eps2 && *eps2 != e2) throw ConfigError("eps2", "inconsistent with the factor (1+x) of b");

  Poly b_tilde = Poly::real_monomial(bt);
  if (b_tilde.degree() >= 1) {
    for (const auto& r : roots(b_tilde)) {
      if (std::abs(r.imag()) <= 1e-8 && std::abs(r.real()) <= 1.0 + 1e-12) {
        throw ConfigError("b", "b_tilde vanishes on [-1,1] at " + std::to_string(r.real()));
      }
    }
  }
  if (!(source.alpha() + e1 > -1.0) || !(source.beta() + e2 > -1.0)) {
    throw ConfigError("b", "exceptional weight is not integrable at an endpoint");
  }

  DarbouxData data{source, Poly::real_monomial(b), Poly::real_monomial(bw), b_tilde, e1, e2,
                   lambda_tilde, b_tilde.degree()};
  return data;
}

DarbouxData make_x1_preset(double alpha, double beta) {
  if (alpha == beta) throw ConfigError("beta", "x1 preset needs alpha != beta (pole undefined)");
  const double c = (alpha + beta) / (beta - alpha);
  if (!(std::abs(c) > 1.0)) {
    throw ConfigError("alpha", "x1 pole c = " + std::to_string(c) + " lies inside [-1,1]");
  }
  if (!(alpha > 0.0)) throw ConfigError("alpha", "x1 preset needs alpha > 0 (lambda_tilde > 0)");
  if (!(beta > 0.0)) throw ConfigError("beta", "x1 preset needs beta > 0 (source beta-1 > -1)");

  // Seed (1-x)^{-a} P_1^{(-a,b)} of the source operator with (a,b) = (alpha+1, beta-1).
  const JacobiParams source(alpha + 1.0, beta - 1.0);
  const double a = source.alpha();
  const std::vector<double> b{c, -(1.0 + c), 1.0};  // (x-1)(x-c)
  const std::vector<double> bw{a * c - 1.0, 1.0 - a};
  auto data = make_darboux_data(source, b, bw, alpha * (beta + 1.0), -1, 1);

  FamilyOptions opts;
  opts.validate = false;
  const ExceptionalFamily family(data, opts);
  const auto report = family.verify_orthonormality(10);
  if (report.max_deviation > 1e-8) {
    throw NumericalError("x1 preset failed orthonormality at (" + std::to_string(report.worst_i) +
                         "," + std::to_string(report.worst_j) + "), residual " +
                         std::to_string(report.max_deviation));
  }
  return data;
}

ExceptionalFamily::ExceptionalFamily(DarbouxData data, FamilyOptions options)
    : data_(std::move(data)),
      options_(options),
      rule_(gauss_jacobi_rule(data_.weight_params(), options.quadrature_order)) {
  if (!(options_.weight_scale > 0.0)) throw ConfigError("weight_scale", "must be positive");
  double mass = 0.0;
  for (std::size_t i = 0; i < rule_.size(); ++i) {
    const double bt = data_.b_tilde(rule_.nodes[i]);
    rule_.weights[i] /= bt * bt;
    mass += rule_.weights[i];
  }
  c0_ = options_.weight_scale / mass;
  for (auto& w : rule_.weights) w *= c0_;

  sigma_cache_.assign(kSigmaCacheSize, std::numeric_limits<double>::quiet_NaN());
  for (int n = 0; n < kSigmaCacheSize; ++n) {
    if (degenerate(n)) continue;
    double s = 0.0;
    for (std::size_t i = 0; i < rule_.size(); ++i) {
      const double v = transformed(n, rule_.nodes[i]);
      s += rule_.weights[i] * v * v;
    }
    sigma_cache_[n] = std::sqrt(s);
  }

  if (!options_.validate) return;
  const auto report = verify_orthonormality(options_.validate_max_index);
  if (report.max_deviation > options_.validate_tol) {
    throw ConfigError("b", "Darboux data fails orthonormality at (" + std::to_string(report.worst_i) +
                               "," + std::to_string(report.worst_j) + "), residual " +
                               std::to_string(report.max_deviation));
  }
  for (int n = 0; n <= options_.validate_max_index; ++n) {
    if (degenerate(n)) continue;
    const auto s = sigma(n);
    if (!(s.rel_discrepancy <= 1e-6)) {
      throw ConfigError("lambda_tilde", "closed-form sigma_" + std::to_string(n) +
                                            " disagrees with the quadrature norm by " +
                                            std::to_string(s.rel_discrepancy));
    }
  }
}

bool ExceptionalFamily::degenerate(int n) const { return n == 0 && data_.bw.is_zero(); }

double ExceptionalFamily::weight(double x) const {
  const double bt = data_.b_tilde(x);
  return c0_ * data_.weight_params().weight(x) / (bt * bt);
}

int ExceptionalFamily::degree(int n) const {
  if (n == 0) return data_.bw.is_zero() ? 0 : data_.bw.degree();
  return n + data_.b.degree() - 1;
}

cplx ExceptionalFamily::transformed(int n, cplx z) const {
  const auto& jp = data_.params;
  return data_.b(z) * eval_jacobi_derivative(jp, n, z) - data_.bw(z) * eval_orthonormal_jacobi(jp, n, z);
}

double ExceptionalFamily::transformed(int n, double x) const {
  const auto& jp = data_.params;
  return data_.b(x) * eval_jacobi_derivative(jp, n, x) - data_.bw(x) * eval_orthonormal_jacobi(jp, n, x);
}

SigmaInfo ExceptionalFamily::sigma(int n) const {
  if (n < 0) throw ConfigError("n", "must be >= 0");
  SigmaInfo info;
  if (n < kSigmaCacheSize) {
    info.quadrature = sigma_cache_[n];
  } else {
    double s = 0.0;
    for (std::size_t i = 0; i < rule_.size(); ++i) {
      const double v = transformed(n, rule_.nodes[i]);
      s += rule_.weights[i] * v * v;
    }
    info.quadrature = std::sqrt(s);
  }
  if (!(info.quadrature > 1e-12)) {
    throw NumericalError("sigma_" + std::to_string(n) + ": A p_n has zero norm (degenerate Darboux data)");
  }
  const auto& jp = data_.params;
  const double lam = n * (n + jp.alpha() + jp.beta() + 1.0) + data_.lambda_tilde;
  info.closed_form = std::sqrt(std::max(0.0, c0_ * lam));
  info.rel_discrepancy = std::abs(info.quadrature - info.closed_form) / info.quadrature;
  return info;
}

double ExceptionalFamily::sigma_n(int n) const {
  if (n >= 0 && n < kSigmaCacheSize && sigma_cache_[n] > 1e-12) return sigma_cache_[n];
  return sigma(n).quadrature;
}

std::pair<cplx, cplx> ExceptionalFamily::eval_with_derivative(int n, cplx z) const {
  const auto& jp = data_.params;
  const auto [b, db] = data_.b.eval_with_derivative(z);
  const auto [bw, dbw] = data_.bw.eval_with_derivative(z);
  const cplx p = eval_orthonormal_jacobi(jp, n, z);
  const cplx dp = eval_jacobi_derivative(jp, n, z);
  const cplx ddp = eval_jacobi_second_derivative(jp, n, z);
  const double s = sigma_n(n);
  return {(b * dp - bw * p) / s, (db * dp + b * ddp - dbw * p - bw * dp) / s};
}

LeadingCoeffInfo ExceptionalFamily::leading_coeff(int n) const {
  if (n < 0) throw ConfigError("n", "must be >= 0");
  const auto& jp = data_.params;
  const int s = data_.b.degree();
  const int deg = n + s - 1;
  const double sig = sigma_n(n);
  const double gamma = leading_coeff_jacobi(jp, n);
  const double big_b = data_.bw.degree() == s - 1 ? data_.bw.coeffs()[s - 1].real() : 0.0;

  // P_n(t) / t^deg from the rescaled recurrences, Richardson-extrapolated in 1/t.
  auto ratio = [&](double t) {
    const double lead_b = scaled_poly(data_.b, t, s);
    const double lead_bw = data_.bw.is_zero() ? 0.0 : scaled_poly(data_.bw, t, s - 1);
    return (lead_b * scaled_jacobi_derivative(jp, n, t) - lead_bw * scaled_orthonormal_jacobi(jp, n, t)) / sig;
  };
  constexpr double t = 1e6;
  const double estimate = 2.0 * ratio(2.0 * t) - ratio(t);

  const double scale = gamma * std::max({1.0, static_cast<double>(n), std::abs(big_b)}) / sig;
  if (std::abs(estimate) <= 1e-9 * scale) {
    throw NumericalError("leading_coeff_exceptional: degree degenerates at n = " + std::to_string(n) +
                         " (n = eps B)");
  }

  LeadingCoeffInfo best;
  best.rel_error = std::numeric_limits<double>::infinity();
  for (int eps = 0; eps <= 1; ++eps) {
    const double value = gamma * (n - eps * big_b) / sig;
    const double rel = std::abs(value - estimate) / std::max(std::abs(value), std::abs(estimate));
    if (rel < best.rel_error) best = {value, eps, estimate, rel, deg};
  }
  if (!(best.rel_error <= 1e-3)) {
    throw NumericalError("leading_coeff_exceptional: neither eps = 0 nor eps = 1 matches the numerical "
                         "leading coefficient at n = " + std::to_string(n));
  }
  return best;
}

Poly ExceptionalFamily::chebyshev_coeffs(int n) const {
  const double sig = sigma_n(n);
  return chebyshev_interpolant(degree(n), [&](double x) { return transformed(n, x) / sig; });
}

Poly ExceptionalFamily::monomial_coeffs(int n) const {
  if (degree(n) > kDegreeCap) {
    throw ConfigError("n", "degree " + std::to_string(degree(n)) + " exceeds the cap " +
                               std::to_string(kDegreeCap));
  }
  const Poly mono = chebyshev_coeffs(n).to_monomial();
  CounterRng rng(0x5eed0000u + static_cast<std::uint64_t>(n));
  double max_value = 0.0, max_residual = 0.0;
  for (int t = 0; t < 20; ++t) {
    const cplx z = std::polar(2.0 * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
    const cplx exact = eval(n, z);
    max_value = std::max(max_value, std::abs(exact));
    max_residual = std::max(max_residual, std::abs(exact - mono(z)));
  }
  if (max_residual > 1e-8 * max_value) {
    throw NumericalError("monomial_coeffs: interpolation residual " + std::to_string(max_residual) +
                         " exceeds 1e-8 relative at n = " + std::to_string(n));
  }
  return mono;
}

OrthonormalityReport ExceptionalFamily::verify_orthonormality(int max_index) const {
  std::vector<std::vector<double>> values;
  std::vector<int> index;
  for (int n = 0; n <= max_index; ++n) {
    if (degenerate(n)) continue;
    const double sig = sigma_n(n);
    std::vector<double> v(rule_.size());
    for (std::size_t i = 0; i < rule_.size(); ++i) v[i] = transformed(n, rule_.nodes[i]) / sig;
    values.push_back(std::move(v));
    index.push_back(n);
  }
  OrthonormalityReport report;
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = a; b < values.size(); ++b) {
      double g = 0.0;
      for (std::size_t i = 0; i < rule_.size(); ++i) g += rule_.weights[i] * values[a][i] * values[b][i];
      const double dev = std::abs(g - (a == b ? 1.0 : 0.0));
      if (dev > report.max_deviation) report = {dev, index[a], index[b]};
    }
  }
  return report;
}

SpanResult ExceptionalFamily::verify_span_property(const Poly& P, int s_max) const {
  SpanResult result;
  const int n = P.degree();
  const int deg_b = data_.b.degree();
  if (n + 2 * deg_b + 5 > kDegreeCap) {
    throw ConfigError("P", "deg P + deg b^2 + 5 exceeds the degree cap");
  }
  const int l_max = n + 2 * deg_b + 5;
  if (P.is_zero()) {
    result.residuals.assign(l_max + 1, 0.0);
    return result;
  }
  const Poly target = data_.b * data_.b * P;
  std::vector<cplx> f(rule_.size());
  double norm2 = 0.0;
  for (std::size_t i = 0; i < rule_.size(); ++i) {
    f[i] = target(cplx{rule_.nodes[i]});
    norm2 += rule_.weights[i] * std::norm(f[i]);
  }
  result.norm = std::sqrt(norm2);

  for (int l = 0; l <= l_max; ++l) {
    if (degenerate(l)) {
      result.residuals.push_back(0.0);
      continue;
    }
    const double sig = sigma_n(l);
    cplx c{};
    for (std::size_t i = 0; i < rule_.size(); ++i) {
      c += rule_.weights[i] * f[i] * (transformed(l, rule_.nodes[i]) / sig);
    }
    result.residuals.push_back(std::abs(c) / result.norm);
  }
  int last = -1;
  for (int l = 0; l <= l_max; ++l) {
    if (result.residuals[l] > 1e-8) last = l;
  }
  if (last == l_max) {
    throw NumericalError("verify_span_property: coefficients do not vanish within the scanned range");
  }
  result.s_observed = std::max(0, last - n);
  if (result.s_observed > s_max) {
    throw NumericalError("verify_span_property: observed s = " + std::to_string(result.s_observed) +
                         " exceeds " + std::to_string(s_max));
  }
  return result;
}

}  // namespace xjulia
