#include "xjulia/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "xjulia/error.hpp"
#include "xjulia/rootfind.hpp"

namespace xjulia {

namespace {

double nearest(cplx z, const std::vector<cplx>& poles) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : poles) best = std::min(best, std::abs(z - p));
  return best;
}

}  // namespace

ZeroClassification classify_zeros(const ExceptionalFamily& family, int n) {
  const int nominal = family.degree(n);
  if (nominal > kDegreeCap) {
    throw ConfigError("n", "degree " + std::to_string(nominal) + " exceeds the cap " + std::to_string(kDegreeCap));
  }
  ZeroClassification zc;
  zc.n = n;
  zc.m = family.data().m;
  if (nominal == 0) return zc;

  const Poly cheb = family.chebyshev_coeffs(n);
  auto zs = roots(cheb);
  const Evaluator exact = [&](cplx z) { return family.eval_with_derivative(n, z); };
  polish_roots(zs, exact);
  zc.max_residual = worst_relative_residual(zs, exact);
  if (!(zc.max_residual <= 1e-8)) {
    throw NumericalError("classify_zeros: root residual " + std::to_string(zc.max_residual) +
                         " violates the 1e-8 contract at n = " + std::to_string(n));
  }
  if (static_cast<int>(zs.size()) != nominal) {
    throw NumericalError("classify_zeros: found " + std::to_string(zs.size()) + " zeros, degree law says " +
                         std::to_string(nominal));
  }

  for (const auto& z : zs) {
    if (std::abs(z.imag()) <= 1e-8 && z.real() > -1.0 + 1e-12 && z.real() < 1.0 - 1e-12) {
      zc.regular.push_back(z.real());
    } else {
      zc.exceptional.push_back(z);
    }
  }
  std::sort(zc.regular.begin(), zc.regular.end());
  for (std::size_t i = 1; i < zc.regular.size(); ++i) {
    if (!(zc.regular[i] - zc.regular[i - 1] > 1e-10)) {
      throw NumericalError("classify_zeros: regular zeros " + std::to_string(i - 1) + " and " +
                           std::to_string(i) + " are not simple at n = " + std::to_string(n));
    }
  }
  const auto poles = family.data().pole_set();
  std::stable_sort(zc.exceptional.begin(), zc.exceptional.end(), [&](cplx a, cplx b) {
    return nearest(a, poles) < nearest(b, poles);
  });
  return zc;
}

double exceptional_distance(const ZeroClassification& zc, const std::vector<cplx>& poles) {
  double worst = 0.0;
  for (const auto& z : zc.exceptional) worst = std::max(worst, nearest(z, poles));
  return worst;
}

EmpiricalMeasure zero_counting_measure(const ZeroClassification& zc) {
  std::vector<cplx> pts(zc.regular.begin(), zc.regular.end());
  return EmpiricalMeasure::uniform(std::move(pts));
}

}  // namespace xjulia
