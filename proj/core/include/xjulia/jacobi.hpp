#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace xjulia {

using cplx = std::complex<double>;

/// Hard cap on polynomial degree for all root-finding and dynamics work.
inline constexpr int kDegreeCap = 60;

/// Parameters of the Jacobi weight (1-x)^alpha (1+x)^beta on [-1,1].
class JacobiParams {
 public:
  /// Throws ConfigError unless alpha > -1 and beta > -1.
  JacobiParams(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  /// alpha, beta >= -1/2: the range in which the Julia-set limit theorems hold.
  bool in_dynamics_range() const noexcept { return alpha_ >= -0.5 && beta_ >= -0.5; }

  /// Total mass of the weight, the integral of (1-x)^alpha (1+x)^beta over [-1,1].
  double mass() const noexcept { return mass_; }

  /// Diagonal recurrence coefficient a_k of x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}.
  double diag(int k) const noexcept;
  /// Off-diagonal coefficient b_k, the square root of the monic beta_k; zero for k = 0.
  double offdiag(int k) const noexcept;

  double weight(double x) const noexcept;

  JacobiParams shifted(double da, double db) const { return {alpha_ + da, beta_ + db}; }

  friend bool operator==(const JacobiParams& a, const JacobiParams& b) noexcept {
    return a.alpha_ == b.alpha_ && a.beta_ == b.beta_;
  }

 private:
  double alpha_;
  double beta_;
  double mass_;
};

// Orthonormal Jacobi polynomials p_n against w(x)dx (unnormalised weight), positive
// leading coefficient, evaluated by the three-term recurrence.
double eval_orthonormal_jacobi(const JacobiParams& params, int n, double x);
cplx eval_orthonormal_jacobi(const JacobiParams& params, int n, cplx z);

/// p_n'(z) = sqrt(n(n+alpha+beta+1)) p_{n-1}^{(alpha+1,beta+1)}(z); zero for n = 0.
double eval_jacobi_derivative(const JacobiParams& params, int n, double x);
cplx eval_jacobi_derivative(const JacobiParams& params, int n, cplx z);

cplx eval_jacobi_second_derivative(const JacobiParams& params, int n, cplx z);

/// p_n(t) / t^n for real t != 0, by the rescaled recurrence (no overflow for huge t).
double scaled_orthonormal_jacobi(const JacobiParams& params, int n, double t);
/// p_n'(t) / t^(n-1).
double scaled_jacobi_derivative(const JacobiParams& params, int n, double t);

/// Leading coefficient gamma_n of p_n, as a product of recurrence coefficients.
double leading_coeff_jacobi(const JacobiParams& params, int n);

/// Gauss rule for the integral of f(x) (1-x)^alpha (1+x)^beta over [-1,1].
struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, inside (-1,1)
  std::vector<double> weights;  // positive
  JacobiParams params;

  std::size_t size() const noexcept { return nodes.size(); }

  double integrate(const std::function<double(double)>& f) const;
};

/// Nodes are the zeros of p_order, found by Newton from Chebyshev-angle guesses with a
/// bisection fallback. Throws NumericalError naming the offending node on failure.
QuadratureRule gauss_jacobi_rule(const JacobiParams& params, int order);

}  // namespace xjulia
