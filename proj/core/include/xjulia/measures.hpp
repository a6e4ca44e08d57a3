#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace xjulia {

using cplx = std::complex<double>;

/// Finite probability measure: weighted point masses in the plane.
class EmpiricalMeasure {
 public:
  /// Weights must be positive and sum to 1 within 1e-12.
  EmpiricalMeasure(std::vector<cplx> points, std::vector<double> weights);
  /// Equal weights 1/N.
  static EmpiricalMeasure uniform(std::vector<cplx> points);

  std::span<const cplx> points() const noexcept { return points_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  std::vector<cplx> points_;
  std::vector<double> weights_;
};

/// Distribution function of the arcsine (equilibrium) measure of [-1,1].
double arcsine_cdf(double x);

/// The points -cos(pi (k - 1/2) / N), k = 1..N: arcsine quantiles at levels (k-1/2)/N.
std::vector<double> arcsine_quantiles(int count);

/// Green function of C \ [-1,1] with pole at infinity, log|z + sqrt(z^2-1)| on the
/// branch with |z + sqrt(z^2-1)| >= 1; zero on [-1,1].
double green_complement_interval(cplx z);

/// sum w_i log(1/|p_i - z|); +infinity when z hits a support point.
double log_potential(const EmpiricalMeasure& mu, cplx z);

/// Discrete logarithmic energy, sum over i != j of w_i w_j log(1/|p_i - p_j|).
/// The diagonal is excluded; +infinity if two support points coincide.
double energy(const EmpiricalMeasure& mu);

/// sup |F_mu - cdf| over the real line. Throws if any point has |Im| > 1e-6.
double ks_distance_real(const EmpiricalMeasure& mu, const std::function<double(double)>& cdf);

/// m_k = sum w_i T_k(p_i), k = 0..k_max (k_max <= 32), with m_0 = 1.
std::vector<cplx> chebyshev_moments(const EmpiricalMeasure& mu, int k_max);

/// Pairwise (tree) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace xjulia
