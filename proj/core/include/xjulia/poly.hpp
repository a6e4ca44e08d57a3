#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace xjulia {

using cplx = std::complex<double>;

enum class Basis { monomial, chebyshev };

/// Dense polynomial with complex coefficients in ascending order, either
/// sum c_k z^k (monomial) or sum c_k T_k(z) (Chebyshev, first kind on [-1,1]).
///
/// degree() is the index of the last coefficient whose modulus exceeds
/// 1e-14 times the largest modulus; trailing coefficients below that are
/// kept in coeffs() and ignored by evaluation and root finding. Basis
/// conversions act on all stored coefficients.
class Poly {
 public:
  Poly() : Poly(Basis::monomial, {cplx{0.0}}) {}
  Poly(Basis basis, std::vector<cplx> coeffs);

  static Poly monomial(std::vector<cplx> coeffs) { return {Basis::monomial, std::move(coeffs)}; }
  static Poly chebyshev(std::vector<cplx> coeffs) { return {Basis::chebyshev, std::move(coeffs)}; }
  static Poly real_monomial(std::span<const double> coeffs);
  /// leading * prod (z - r_i), monomial basis.
  static Poly from_roots(std::span<const cplx> roots, cplx leading = 1.0);

  Basis basis() const noexcept { return basis_; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return degree_; }
  bool is_zero() const noexcept;

  cplx operator()(cplx z) const;
  double operator()(double x) const { return (*this)(cplx{x}).real(); }
  /// Value and first derivative.
  std::pair<cplx, cplx> eval_with_derivative(cplx z) const;
  /// Forward rounding-error bound for evaluation at z.
  double eval_error_bound(cplx z) const;

  /// Leading coefficient in the monomial sense (Chebyshev: 2^{d-1} c_d for d >= 1).
  cplx leading_coefficient() const;

  Poly to_monomial() const;
  Poly to_chebyshev() const;
  Poly to(Basis b) const { return b == Basis::monomial ? to_monomial() : to_chebyshev(); }

  /// p(z) - w, same basis.
  Poly minus_constant(cplx w) const;
  /// Product, returned in monomial basis.
  Poly operator*(const Poly& other) const;
  Poly derivative() const;

 private:
  Basis basis_;
  std::vector<cplx> coeffs_;
  int degree_ = 0;
};

/// Chebyshev coefficients of the degree-`degree` interpolant of f at the
/// points cos(pi (j + 1/2) / (degree + 1)), j = 0..degree.
Poly chebyshev_interpolant(int degree, const auto& f);

namespace detail {
std::vector<double> chebyshev_points(int count);
Poly chebyshev_from_samples(std::span<const cplx> samples);
}  // namespace detail

Poly chebyshev_interpolant(int degree, const auto& f) {
  const auto x = detail::chebyshev_points(degree + 1);
  std::vector<cplx> values(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) values[j] = f(x[j]);
  return detail::chebyshev_from_samples(values);
}

}  // namespace xjulia
