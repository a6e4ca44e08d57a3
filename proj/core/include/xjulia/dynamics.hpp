#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "xjulia/measures.hpp"
#include "xjulia/poly.hpp"
#include "xjulia/rootfind.hpp"

namespace xjulia {

/// A polynomial map together with radii certifying escape to infinity.
struct EscapeData {
  Poly poly;                    // monomial or Chebyshev basis
  double escape_radius = 0.0;   // |z| > R_p implies |p(z)| > 2|z|
  double uniform_radius = 0.0;  // R_tilde >= R_p, shared across a batch
};

/// R_p = max(1, (2 + sum_{i<d} |a_i|) / |a_d|) from the monomial coefficients.
/// Throws ConfigError for degree < 2 and NumericalError if the sampled check fails.
EscapeData escape_radius(const Poly& p);

/// Escape data for a family of maps with R_tilde set to the largest R_p.
std::vector<EscapeData> escape_radii(std::span<const Poly> polys);

/// |p(z)| > 2|z| at `count` random z with |z| in [1.01 R_p, 10 R_p].
bool check_escape_radius(const EscapeData& e, std::uint64_t seed = 0, int count = 200);

struct GridSpec {
  cplx center{0.0, 0.0};
  double half_width = 2.0;
  int resolution = 512;
  int max_iter = 200;
};

/// Escape-time counts; counts == max_iter marks points that did not escape.
/// Row 0 is the top edge (largest imaginary part); pixel (r, c) is sampled at its centre.
struct RasterGrid {
  GridSpec spec;
  std::vector<int> counts;  // resolution * resolution, row-major

  int at(int row, int col) const { return counts[static_cast<std::size_t>(row) * spec.resolution + col]; }
  bool escaped(int row, int col) const { return at(row, col) < spec.max_iter; }
  cplx pixel_center(int row, int col) const;
  double pixel_width() const { return 2.0 * spec.half_width / spec.resolution; }
  /// Pixel containing z, or {-1, -1} outside the grid.
  std::pair<int, int> pixel_of(cplx z) const;
};

/// Iterate z -> p(z) from each pixel centre until |z| > R_p or max_iter steps.
/// Rows are split across `threads` workers; the result does not depend on it.
RasterGrid escape_raster(const EscapeData& e, const GridSpec& grid, int threads = 1);

struct BrolinOptions {
  std::size_t samples = 20000;
  int burn_in = 100;
  std::uint64_t seed = 1;
  /// Independent backward orbits; the output depends on (seed, chains) only.
  int chains = 1;
  /// Worker threads running the chains.
  int threads = 1;
  cplx start{0.0, 0.0};
  RootOptions root_options{};
};

struct BrolinSample {
  std::vector<cplx> points;  // chain 0 first, then chain 1, ...
  std::uint64_t seed = 0;
  int burn_in = 0;
  int degree = 0;
  int chains = 1;

  EmpiricalMeasure measure() const { return EmpiricalMeasure::uniform(points); }
};

/// Random backward orbits: from w, solve p(z) = w and move to one of the d roots with
/// probability 1/d each. The first burn_in points of every chain are discarded.
BrolinSample brolin_sample(const EscapeData& e, const BrolinOptions& options);

/// Median distance from a point to its nearest other point.
double median_nn_spacing(std::span<const cplx> points);

/// Fraction of forward images p(z_i) that lie within eps of some sample point.
double forward_invariance_check(const EscapeData& e, const BrolinSample& s, double eps);

struct Rect {
  double re_min, re_max, im_min, im_max;
  bool contains(cplx z, double slack = 1e-12) const {
    return z.real() >= re_min - slack && z.real() <= re_max + slack && z.imag() >= im_min - slack &&
           z.imag() <= im_max + slack;
  }
};

/// Number of solutions of p(z) = w inside the closed rectangle. The rectangle must
/// keep a positive distance from [-1,1].
int preimage_count_in_set(const EscapeData& e, cplx w, const Rect& region);

/// True if every solution of p(z) = w, for `count` equally spaced w on |w| = radius,
/// lies in the open disc D(0, radius).
bool boundary_preimages_inside(const EscapeData& e, double radius, int count = 20);

/// Mean of f over all d preimages (weight 1/d each) of the given points.
cplx pullback_mean(const EscapeData& e, std::span<const cplx> points, const std::function<cplx(cplx)>& f);

/// Fraction of samples whose pixel did not escape. With tolerance_pixels = t, a sample
/// also counts when any pixel within t rows and columns of its own did not escape.
double raster_hit_fraction(const RasterGrid& raster, std::span<const cplx> points, int tolerance_pixels = 0);

}  // namespace xjulia
