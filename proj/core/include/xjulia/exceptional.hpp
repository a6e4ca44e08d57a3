#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "xjulia/jacobi.hpp"
#include "xjulia/poly.hpp"

namespace xjulia {

/// One Darboux transformation of the classical family p_n^{(alpha,beta)}:
///
///   P_n = (b p_n' - bw p_n) / sigma_n,   W = c0 (1-x)^{alpha+eps1} (1+x)^{beta+eps2} / b_tilde^2.
///
/// b is monic with real coefficients and no zeros in (-1,1); b_tilde is b with its
/// (x-1) and/or (x+1) factors removed and has no zeros on [-1,1].
struct DarbouxData {
  JacobiParams params;  // the source family
  Poly b;
  Poly bw;
  Poly b_tilde;
  int eps1 = 1;
  int eps2 = 1;
  double lambda_tilde = 0.0;
  int m = 0;  // deg b_tilde, the codimension

  /// Exponents of the exceptional weight.
  JacobiParams weight_params() const { return params.shifted(eps1, eps2); }
  /// Zeros of b_tilde.
  std::vector<cplx> pole_set() const;
};

/// Validates the structural invariants and derives b_tilde, m and the eps signs.
/// When eps1/eps2 are given they must agree with the factors of b. Throws ConfigError.
DarbouxData make_darboux_data(const JacobiParams& source, std::span<const double> b,
                              std::span<const double> bw, double lambda_tilde,
                              std::optional<int> eps1 = std::nullopt,
                              std::optional<int> eps2 = std::nullopt);

/// Codimension-one family with b_tilde(x) = x - c, c = (alpha+beta)/(beta-alpha).
///
/// (alpha, beta) are the exponents of the resulting exceptional weight
/// (1-x)^alpha (1+x)^beta / (x-c)^2; the source classical family is
/// (alpha+1, beta-1). Requires alpha > 0, beta > 0, alpha != beta and |c| > 1.
/// The returned data has passed the orthonormality check for indices <= 10.
DarbouxData make_x1_preset(double alpha, double beta);

/// Preset parameters used by the CLI and the acceptance suite.
inline constexpr double kPresetAlpha = 0.0025;
inline constexpr double kPresetBeta = 0.5025;

struct FamilyOptions {
  int quadrature_order = 200;
  /// Multiplies c0; 1 makes W a probability measure.
  double weight_scale = 1.0;
  /// Gate construction on orthonormality (indices <= validate_max_index) and on the
  /// closed-form sigma_n, i.e. on lambda_tilde.
  bool validate = true;
  int validate_max_index = 10;
  double validate_tol = 1e-8;
};

struct SigmaInfo {
  double quadrature = 0.0;   // ||A p_n||_W, the normaliser actually used
  double closed_form = 0.0;  // sqrt(c0 (n(n+alpha+beta+1) + lambda_tilde))
  double rel_discrepancy = 0.0;
};

struct LeadingCoeffInfo {
  double value = 0.0;  // gamma_n (n - eps B) / sigma_n
  int epsilon = 0;
  double numerical_estimate = 0.0;
  double rel_error = 0.0;
  int degree = 0;
};

struct OrthonormalityReport {
  double max_deviation = 0.0;
  int worst_i = 0;
  int worst_j = 0;
};

struct SpanResult {
  int s_observed = 0;
  std::vector<double> residuals;  // |<b^2 P, P_l>_W| / ||b^2 P||_W, l = 0, 1, ...
  double norm = 0.0;
};

/// Exceptional orthonormal family built from DarbouxData. Immutable after
/// construction; all member functions are safe to call concurrently.
class ExceptionalFamily {
 public:
  explicit ExceptionalFamily(DarbouxData data, FamilyOptions options = {});

  const DarbouxData& data() const noexcept { return data_; }
  double c0() const noexcept { return c0_; }
  /// Gauss rule with the factor c0 / b_tilde^2 folded into the weights, so that
  /// sum w_i f(x_i) approximates the integral of f W over [-1,1].
  const QuadratureRule& weight_rule() const noexcept { return rule_; }
  double weight(double x) const;

  /// Nominal degree of P_n: n + deg b - 1 (deg bw for n = 0).
  int degree(int n) const;

  SigmaInfo sigma(int n) const;
  double sigma_n(int n) const;

  /// A p_n = b p_n' - bw p_n, before normalisation.
  cplx transformed(int n, cplx z) const;
  double transformed(int n, double x) const;

  cplx eval(int n, cplx z) const { return transformed(n, z) / sigma_n(n); }
  double eval(int n, double x) const { return transformed(n, x) / sigma_n(n); }
  std::pair<cplx, cplx> eval_with_derivative(int n, cplx z) const;

  LeadingCoeffInfo leading_coeff(int n) const;

  /// P_n interpolated at degree(n)+1 Chebyshev points of [-1,1].
  Poly chebyshev_coeffs(int n) const;
  /// Monomial coefficients via the Chebyshev interpolant, residual-checked at 20
  /// points of D(0,2) to 1e-8 relative. Requires degree(n) <= kDegreeCap.
  Poly monomial_coeffs(int n) const;

  OrthonormalityReport verify_orthonormality(int max_index) const;

  /// Expansion coefficients of b^2 P in {P_l}. s_observed is the smallest s with
  /// negligible coefficients for every l > deg P + s; throws when it exceeds s_max.
  SpanResult verify_span_property(const Poly& P, int s_max) const;

 private:
  bool degenerate(int n) const;

  DarbouxData data_;
  FamilyOptions options_;
  double c0_ = 0.0;
  QuadratureRule rule_;
  std::vector<double> sigma_cache_;
};

}  // namespace xjulia
