#include "xjulia/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "xjulia/error.hpp"

namespace xjulia {

namespace {

using lcplx = std::complex<long double>;

int effective_degree(const std::vector<cplx>& c) {
  double max_mod = 0.0;
  for (const auto& v : c) max_mod = std::max(max_mod, std::abs(v));
  if (max_mod == 0.0) return 0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    if (std::abs(c[k]) > 1e-14 * max_mod) return k;
  }
  return 0;
}

// Rows of the Chebyshev-to-monomial table: T_k(x) = sum_j t[k][j] x^j.
std::vector<std::vector<long double>> chebyshev_table(int degree) {
  std::vector<std::vector<long double>> t(degree + 1, std::vector<long double>(degree + 1, 0.0L));
  t[0][0] = 1.0L;
  if (degree >= 1) t[1][1] = 1.0L;
  for (int k = 2; k <= degree; ++k) {
    for (int j = 0; j <= k; ++j) {
      long double v = -t[k - 2][j];
      if (j > 0) v += 2.0L * t[k - 1][j - 1];
      t[k][j] = v;
    }
  }
  return t;
}

}  // namespace

Poly::Poly(Basis basis, std::vector<cplx> coeffs) : basis_(basis), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ConfigError("coeffs", "polynomial coefficients must be finite");
    }
  }
  degree_ = effective_degree(coeffs_);
}

Poly Poly::real_monomial(std::span<const double> coeffs) {
  return monomial(std::vector<cplx>(coeffs.begin(), coeffs.end()));
}

Poly Poly::from_roots(std::span<const cplx> roots, cplx leading) {
  std::vector<cplx> c{leading};
  for (const auto& r : roots) {
    c.push_back(0.0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return monomial(std::move(c));
}

bool Poly::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx{}; });
}

cplx Poly::operator()(cplx z) const {
  const int d = degree_;
  if (basis_ == Basis::monomial) {
    cplx acc = coeffs_[d];
    for (int k = d - 1; k >= 0; --k) acc = acc * z + coeffs_[k];
    return acc;
  }
  // Clenshaw
  cplx b1{}, b2{};
  for (int k = d; k >= 1; --k) {
    const cplx b0 = coeffs_[k] + 2.0 * z * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs_[0] + z * b1 - b2;
}

std::pair<cplx, cplx> Poly::eval_with_derivative(cplx z) const {
  const int d = degree_;
  if (basis_ == Basis::monomial) {
    cplx p = coeffs_[d], dp{};
    for (int k = d - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + coeffs_[k];
    }
    return {p, dp};
  }
  cplx b1{}, b2{}, db1{}, db2{};
  for (int k = d; k >= 1; --k) {
    const cplx b0 = coeffs_[k] + 2.0 * z * b1 - b2;
    const cplx db0 = 2.0 * b1 + 2.0 * z * db1 - db2;
    b2 = b1;
    b1 = b0;
    db2 = db1;
    db1 = db0;
  }
  return {coeffs_[0] + z * b1 - b2, b1 + z * db1 - db2};
}

double Poly::eval_error_bound(cplx z) const {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const int d = degree_;
  double sum = 0.0;
  if (basis_ == Basis::monomial) {
    const double r = std::abs(z);
    double pw = 1.0;
    for (int k = 0; k <= d; ++k) {
      sum += std::abs(coeffs_[k]) * pw;
      pw *= r;
    }
  } else {
    cplx t_prev = 1.0, t = z;
    sum = std::abs(coeffs_[0]);
    for (int k = 1; k <= d; ++k) {
      sum += std::abs(coeffs_[k]) * std::abs(t);
      const cplx t_next = 2.0 * z * t - t_prev;
      t_prev = t;
      t = t_next;
    }
  }
  return 4.0 * (d + 1) * eps * sum;
}

cplx Poly::leading_coefficient() const {
  const int d = degree_;
  if (basis_ == Basis::monomial || d == 0) return coeffs_[d];
  return std::ldexp(1.0, d - 1) * coeffs_[d];
}

Poly Poly::to_monomial() const {
  if (basis_ == Basis::monomial) return *this;
  // Conversions are exact linear maps on every stored coefficient; a coefficient below
  // the degree cutoff in one basis can be significant in the other.
  const int d = static_cast<int>(coeffs_.size()) - 1;
  const auto t = chebyshev_table(d);
  std::vector<cplx> out(d + 1);
  for (int j = 0; j <= d; ++j) {
    lcplx acc{};
    for (int k = j; k <= d; ++k) acc += lcplx(coeffs_[k]) * t[k][j];
    out[j] = cplx(acc);
  }
  return monomial(std::move(out));
}

Poly Poly::to_chebyshev() const {
  if (basis_ == Basis::chebyshev) return *this;
  // x^j = 2^{1-j} sum_{i=0}^{floor(j/2)} C(j,i) T_{j-2i}  (halve the T_0 term for even j)
  const int d = static_cast<int>(coeffs_.size()) - 1;
  std::vector<lcplx> acc(d + 1);
  std::vector<long double> binom{1.0L};
  for (int j = 0; j <= d; ++j) {
    if (j > 0) {
      std::vector<long double> next(j + 1, 1.0L);
      for (int i = 1; i < j; ++i) next[i] = binom[i - 1] + binom[i];
      binom = std::move(next);
    }
    const long double scale = std::ldexp(1.0L, 1 - j);
    for (int i = 0; 2 * i <= j; ++i) {
      long double w = scale * binom[i];
      if (2 * i == j) w *= 0.5L;
      acc[j - 2 * i] += lcplx(coeffs_[j]) * w;
    }
  }
  std::vector<cplx> out(d + 1);
  for (int k = 0; k <= d; ++k) out[k] = cplx(acc[k]);
  return chebyshev(std::move(out));
}

Poly Poly::minus_constant(cplx w) const {
  std::vector<cplx> c(coeffs_.begin(), coeffs_.begin() + degree_ + 1);
  c[0] -= w;
  return {basis_, std::move(c)};
}

Poly Poly::operator*(const Poly& other) const {
  const Poly a = to_monomial(), b = other.to_monomial();
  const int da = a.degree(), db = b.degree();
  std::vector<cplx> c(da + db + 1);
  for (int i = 0; i <= da; ++i) {
    for (int j = 0; j <= db; ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return monomial(std::move(c));
}

Poly Poly::derivative() const {
  const int d = degree_;
  if (d == 0) return {basis_, {cplx{0.0}}};
  std::vector<cplx> c(d);
  if (basis_ == Basis::monomial) {
    for (int k = 1; k <= d; ++k) c[k - 1] = static_cast<double>(k) * coeffs_[k];
    return monomial(std::move(c));
  }
  // c'_{k-1} = c'_{k+1} + 2k c_k, with the T_0 coefficient halved at the end.
  std::vector<cplx> dc(d + 2);
  for (int k = d; k >= 1; --k) dc[k - 1] = dc[k + 1] + 2.0 * static_cast<double>(k) * coeffs_[k];
  dc[0] *= 0.5;
  dc.resize(d);
  return chebyshev(std::move(dc));
}

namespace detail {

std::vector<double> chebyshev_points(int count) {
  std::vector<double> x(count);
  for (int j = 0; j < count; ++j) x[j] = std::cos(std::numbers::pi * (j + 0.5) / count);
  return x;
}

// Discrete cosine transform of samples at the Chebyshev points of the first kind.
// Direct O(N^2) summation; N never exceeds kDegreeCap + a few.
Poly chebyshev_from_samples(std::span<const cplx> samples) {
  const int n = static_cast<int>(samples.size());
  std::vector<cplx> c(n);
  for (int k = 0; k < n; ++k) {
    lcplx acc{};
    for (int j = 0; j < n; ++j) {
      acc += lcplx(samples[j]) * std::cos(std::numbers::pi_v<long double> * k * (j + 0.5L) / n);
    }
    c[k] = cplx(acc * (2.0L / n));
  }
  c[0] *= 0.5;
  return Poly::chebyshev(std::move(c));
}

}  // namespace detail

}  // namespace xjulia
