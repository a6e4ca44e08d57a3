#include "xjulia/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <unordered_map>

#include "xjulia/error.hpp"
#include "xjulia/rng.hpp"

namespace xjulia {

namespace {

constexpr double kOverflow = 1e150;
constexpr int kMaxRestarts = 5;

void canonical_sort(std::vector<cplx>& zs) {
  std::sort(zs.begin(), zs.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
}

std::vector<cplx> solve_preimages(const EscapeData& e, cplx w, const RootOptions& opts = {}) {
  return roots(e.poly.minus_constant(w), opts);
}

// Preimages of a point on the Julia set sit close to those of the start point, which
// makes the latter far better Aberth seeds than the generic circle or ellipse.
std::vector<cplx> solve_preimages(const EscapeData& e, cplx w, std::span<const cplx> seeds, const RootOptions& opts) {
  const Poly q = e.poly.minus_constant(w);
  try {
    return roots(q, seeds, opts);
  } catch (const NumericalError&) {
    return roots(q, opts);
  }
}

double min_pair_distance(std::span<const cplx> zs) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < zs.size(); ++i) {
    for (std::size_t j = i + 1; j < zs.size(); ++j) best = std::min(best, std::abs(zs[i] - zs[j]));
  }
  return best;
}

// Uniform grid of buckets over the bounding box of a point set.
class SpatialIndex {
 public:
  explicit SpatialIndex(std::span<const cplx> points) : points_(points) {
    double x0 = points[0].real(), x1 = x0, y0 = points[0].imag(), y1 = y0;
    for (const auto& z : points) {
      x0 = std::min(x0, z.real());
      x1 = std::max(x1, z.real());
      y0 = std::min(y0, z.imag());
      y1 = std::max(y1, z.imag());
    }
    origin_ = {x0, y0};
    const double extent = std::max(x1 - x0, y1 - y0);
    h_ = extent > 0.0 ? extent / std::max(1.0, std::sqrt(static_cast<double>(points.size()))) : 1.0;
    span_ = static_cast<long>(std::ceil(extent / h_)) + 1;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto [cx, cy] = cell(points[i]);
      buckets_[key(cx, cy)].push_back(i);
    }
  }

  // Distance to the nearest point other than `exclude`, searched up to max_radius;
  // +infinity if none is that close.
  double nearest(cplx z, std::size_t exclude, double max_radius) const {
    const auto [cx, cy] = cell(z);
    double best = std::numeric_limits<double>::infinity();
    for (long r = 0;; ++r) {
      for (long dx = -r; dx <= r; ++dx) {
        for (long dy = -r; dy <= r; ++dy) {
          if (std::max(std::labs(dx), std::labs(dy)) != r) continue;
          const auto it = buckets_.find(key(cx + dx, cy + dy));
          if (it == buckets_.end()) continue;
          for (std::size_t i : it->second) {
            if (i == exclude) continue;
            best = std::min(best, std::abs(points_[i] - z));
          }
        }
      }
      const double reach = static_cast<double>(r) * h_;
      if (best <= reach || reach > max_radius || r > span_ + std::max(std::labs(cx), std::labs(cy))) break;
    }
    return best <= max_radius ? best : std::numeric_limits<double>::infinity();
  }

 private:
  std::pair<long, long> cell(cplx z) const {
    const double fx = std::floor((z.real() - origin_.real()) / h_);
    const double fy = std::floor((z.imag() - origin_.imag()) / h_);
    constexpr double lim = 1e15;
    return {static_cast<long>(std::clamp(fx, -lim, lim)), static_cast<long>(std::clamp(fy, -lim, lim))};
  }
  static std::uint64_t key(long x, long y) {
    return mix64(static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(y));
  }

  std::span<const cplx> points_;
  cplx origin_;
  double h_ = 1.0;
  long span_ = 1;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

template <class F>
void parallel_for(int count, int threads, F&& body) {
  threads = std::clamp(threads, 1, std::max(1, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < count; i += threads) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace

EscapeData escape_radius(const Poly& p) {
  if (p.degree() < 2) throw ConfigError("poly", "escape radius needs degree >= 2");
  const Poly mono = p.to_monomial();
  const auto a = mono.coeffs();
  const int d = mono.degree();
  double tail = 0.0;
  for (int i = 0; i < d; ++i) tail += std::abs(a[i]);
  EscapeData e{p, 0.0, 0.0};
  e.escape_radius = std::max(1.0, (2.0 + tail) / std::abs(a[d]));
  e.uniform_radius = e.escape_radius;
  if (!check_escape_radius(e)) {
    throw NumericalError("escape radius " + std::to_string(e.escape_radius) + " fails the sampled check");
  }
  return e;
}

std::vector<EscapeData> escape_radii(std::span<const Poly> polys) {
  std::vector<EscapeData> out;
  double r = 0.0;
  for (const auto& p : polys) {
    out.push_back(escape_radius(p));
    r = std::max(r, out.back().escape_radius);
  }
  for (auto& e : out) e.uniform_radius = r;
  return out;
}

bool check_escape_radius(const EscapeData& e, std::uint64_t seed, int count) {
  CounterRng rng(seed);
  for (int i = 0; i < count; ++i) {
    const double r = e.escape_radius * (1.01 + 8.99 * rng.uniform());
    const cplx z = std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
    if (!(std::abs(e.poly(z)) > 2.0 * r)) return false;
  }
  return true;
}

cplx RasterGrid::pixel_center(int row, int col) const {
  // odd integer offsets keep mirrored pixels exact negatives of each other
  const double hw = spec.half_width;
  const int res = spec.resolution;
  return {spec.center.real() + hw * (2 * col + 1 - res) / res, spec.center.imag() - hw * (2 * row + 1 - res) / res};
}

std::pair<int, int> RasterGrid::pixel_of(cplx z) const {
  const double pw = pixel_width();
  const double col = std::floor((z.real() - (spec.center.real() - spec.half_width)) / pw);
  const double row = std::floor((spec.center.imag() + spec.half_width - z.imag()) / pw);
  if (!(col >= 0 && row >= 0 && col < spec.resolution && row < spec.resolution)) return {-1, -1};
  return {static_cast<int>(row), static_cast<int>(col)};
}

RasterGrid escape_raster(const EscapeData& e, const GridSpec& grid, int threads) {
  if (grid.resolution < 1 || grid.resolution > 8192) throw ConfigError("resolution", "must lie in [1, 8192]");
  if (grid.max_iter < 1 || grid.max_iter > 10000) throw ConfigError("max_iter", "must lie in [1, 10000]");
  if (!(grid.half_width > 0.0) || !std::isfinite(grid.half_width)) {
    throw ConfigError("half_width", "must be positive and finite");
  }
  RasterGrid out{grid, std::vector<int>(static_cast<std::size_t>(grid.resolution) * grid.resolution)};
  const double R = e.escape_radius;
  parallel_for(grid.resolution, threads, [&](int row) {
    for (int col = 0; col < grid.resolution; ++col) {
      cplx z = out.pixel_center(row, col);
      int k = 0;
      for (; k < grid.max_iter; ++k) {
        const double r = std::abs(z);
        if (!(r <= R) || r > kOverflow) break;
        z = e.poly(z);
      }
      out.counts[static_cast<std::size_t>(row) * grid.resolution + col] = k;
    }
  });
  return out;
}

BrolinSample brolin_sample(const EscapeData& e, const BrolinOptions& options) {
  const int d = e.poly.degree();
  if (d < 2) throw ConfigError("poly", "Brolin sampling needs degree >= 2");
  if (options.samples < 1 || options.samples > 1000000) throw ConfigError("samples", "must lie in [1, 1e6]");
  if (options.burn_in < 0) throw ConfigError("burn_in", "must be nonnegative");
  if (options.chains < 1 || static_cast<std::size_t>(options.chains) > options.samples) {
    throw ConfigError("chains", "must lie in [1, samples]");
  }

  cplx start = options.start;
  auto seeds = solve_preimages(e, start, options.root_options);
  {
    double scale = 1.0;
    for (const auto& z : seeds) scale = std::max(scale, std::abs(z));
    if (min_pair_distance(seeds) < 1e-6 * scale) {
      start = start + cplx{0.1, 0.1};
      seeds = solve_preimages(e, start, options.root_options);
    }
  }

  const int chains = options.chains;
  std::vector<std::vector<cplx>> per_chain(chains);
  parallel_for(chains, options.threads, [&](int c) {
    const std::size_t want = options.samples / chains + (static_cast<std::size_t>(c) < options.samples % chains);
    const std::uint64_t key = derive_seed(options.seed, static_cast<std::uint64_t>(c));
    for (int attempt = 0;; ++attempt) {
      CounterRng rng(attempt == 0 ? key : derive_seed(key, 1000 + attempt));
      std::vector<cplx> pts;
      pts.reserve(want);
      try {
        cplx w = start;
        const std::size_t total = want + static_cast<std::size_t>(options.burn_in);
        for (std::size_t step = 0; step < total; ++step) {
          auto zs = solve_preimages(e, w, seeds, options.root_options);
          canonical_sort(zs);
          w = zs[rng.below(zs.size())];
          if (step >= static_cast<std::size_t>(options.burn_in)) pts.push_back(w);
        }
        per_chain[c] = std::move(pts);
        return;
      } catch (const NumericalError& err) {
        if (attempt >= kMaxRestarts) {
          throw NumericalError("Brolin chain " + std::to_string(c) + " failed after " +
                               std::to_string(kMaxRestarts) + " restarts: " + err.what());
        }
      }
    }
  });

  BrolinSample s;
  s.seed = options.seed;
  s.burn_in = options.burn_in;
  s.degree = d;
  s.chains = chains;
  s.points.reserve(options.samples);
  for (auto& v : per_chain) s.points.insert(s.points.end(), v.begin(), v.end());
  return s;
}

double median_nn_spacing(std::span<const cplx> points) {
  if (points.size() < 2) throw ConfigError("points", "need at least two points");
  const SpatialIndex index(points);
  std::vector<double> nn(points.size());
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) nn[i] = index.nearest(points[i], i, inf);
  auto mid = nn.begin() + static_cast<long>(nn.size() / 2);
  std::nth_element(nn.begin(), mid, nn.end());
  return *mid;
}

double forward_invariance_check(const EscapeData& e, const BrolinSample& s, double eps) {
  if (s.points.empty()) throw ConfigError("sample", "sample is empty");
  if (!(eps > 0.0)) throw ConfigError("eps", "must be positive");
  const SpatialIndex index(s.points);
  std::size_t hits = 0;
  for (const auto& z : s.points) {
    const cplx image = e.poly(z);
    if (index.nearest(image, static_cast<std::size_t>(-1), eps) <= eps) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(s.points.size());
}

int preimage_count_in_set(const EscapeData& e, cplx w, const Rect& region) {
  if (!(region.re_min <= region.re_max && region.im_min <= region.im_max)) {
    throw ConfigError("region", "empty rectangle");
  }
  const bool touches = region.im_min <= 0.0 && region.im_max >= 0.0 && region.re_min <= 1.0 && region.re_max >= -1.0;
  if (touches) throw ConfigError("region", "must keep a positive distance from [-1,1]");
  int count = 0;
  for (const auto& z : solve_preimages(e, w)) count += region.contains(z) ? 1 : 0;
  return count;
}

bool boundary_preimages_inside(const EscapeData& e, double radius, int count) {
  if (!(radius > 0.0) || count < 1) throw ConfigError("radius", "need radius > 0 and count >= 1");
  for (int k = 0; k < count; ++k) {
    const cplx w = std::polar(radius, 2.0 * std::numbers::pi * k / count);
    for (const auto& z : solve_preimages(e, w)) {
      if (!(std::abs(z) < radius)) return false;
    }
  }
  return true;
}

cplx pullback_mean(const EscapeData& e, std::span<const cplx> points, const std::function<cplx(cplx)>& f) {
  if (points.empty()) throw ConfigError("points", "need at least one point");
  cplx total{};
  for (const auto& w : points) {
    const auto zs = solve_preimages(e, w);
    cplx inner{};
    for (const auto& z : zs) inner += f(z);
    total += inner / static_cast<double>(zs.size());
  }
  return total / static_cast<double>(points.size());
}

double raster_hit_fraction(const RasterGrid& raster, std::span<const cplx> points, int tolerance_pixels) {
  if (points.empty()) throw ConfigError("points", "need at least one point");
  if (tolerance_pixels < 0) throw ConfigError("tolerance_pixels", "must be nonnegative");
  const int res = raster.spec.resolution;
  std::size_t hits = 0;
  for (const auto& z : points) {
    const auto [row, col] = raster.pixel_of(z);
    if (row < 0) continue;
    bool hit = false;
    for (int r = std::max(0, row - tolerance_pixels); !hit && r <= std::min(res - 1, row + tolerance_pixels); ++r) {
      for (int c = std::max(0, col - tolerance_pixels); !hit && c <= std::min(res - 1, col + tolerance_pixels); ++c) {
        hit = !raster.escaped(r, c);
      }
    }
    if (hit) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(points.size());
}

}  // namespace xjulia
