#pragma once

#include <vector>

#include "xjulia/exceptional.hpp"
#include "xjulia/measures.hpp"

namespace xjulia {

/// Zeros of P_n split into regular (simple, real, inside (-1,1)) and exceptional.
struct ZeroClassification {
  std::vector<double> regular;   // ascending
  std::vector<cplx> exceptional; // by distance to the nearest zero of b_tilde
  int n = 0;
  int m = 0;
  double max_residual = 0.0;     // worst |P_n(r)| / max_{|z|=1+|r|} |P_n|
};

/// Roots of the Chebyshev interpolant of P_n, Newton-polished against the recurrence
/// form. A root is regular iff |Im| <= 1e-8 and Re lies in (-1+1e-12, 1-1e-12).
/// Throws NumericalError on a residual, count or simplicity violation.
ZeroClassification classify_zeros(const ExceptionalFamily& family, int n);

/// Largest distance from an exceptional zero to the zero set of b_tilde (0 if none).
double exceptional_distance(const ZeroClassification& zc, const std::vector<cplx>& poles);

/// Normalised counting measure of the regular zeros; exceptional zeros are excluded.
EmpiricalMeasure zero_counting_measure(const ZeroClassification& zc);

}  // namespace xjulia
