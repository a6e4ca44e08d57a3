#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "xjulia/poly.hpp"

namespace xjulia {

struct RootOptions {
  int max_sweeps = 500;
  /// A root is converged once its Aberth correction is <= tol * (1 + |root|)
  /// or its residual is below the evaluation rounding bound.
  double tol = 1e-13;
};

/// Value and derivative of a function whose roots are polished by Newton.
using Evaluator = std::function<std::pair<cplx, cplx>(cplx)>;

/// All deg(p) roots with multiplicity by Aberth-Ehrlich simultaneous iteration,
/// started from perturbed-circle (monomial) or perturbed-ellipse (Chebyshev) guesses.
/// Throws NumericalError carrying the worst residual after max_sweeps sweeps.
std::vector<cplx> roots(const Poly& p, const RootOptions& options = {});

/// Same, from caller-supplied starting points (one per root).
std::vector<cplx> roots(const Poly& p, std::span<const cplx> initial,
                        const RootOptions& options = {});

/// Default starting points used by roots().
std::vector<cplx> initial_guesses(const Poly& p);

/// Newton polishing of each root against a more accurate evaluation form. A step is
/// only accepted while it decreases the residual.
void polish_roots(std::span<cplx> zs, const Evaluator& f, int max_iter = 8);

/// max |p(z)| on |z| = radius, sampled at 64 points.
double circle_max(const Evaluator& f, double radius);

/// Residual contract: |f(r)| <= 1e-8 * max_{|z| = 1 + |r|} |f|. Returns the worst
/// ratio |f(r)| / max over all roots (<= 1e-8 means the contract holds).
double worst_relative_residual(std::span<const cplx> zs, const Evaluator& f);

}  // namespace xjulia
