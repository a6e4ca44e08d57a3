#pragma once

// Experiment defaults and pass/fail thresholds. Every value here can be
// overridden from the config file ("thresholds" object) or --threshold name=value.
// Bump kDefaultsVersion whenever a number changes; it is echoed into every report.

#include <array>
#include <cstdint>
#include <string_view>

namespace xjulia::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kDefaultsVersion = 1;

inline constexpr std::array<int, 5> kDefaultNList{10, 20, 30, 40, 50};
inline constexpr std::size_t kDefaultSamples = 20000;
inline constexpr int kDefaultBurnIn = 100;
inline constexpr std::uint64_t kDefaultSeed = 20240917;
inline constexpr int kDefaultChains = 4;
inline constexpr double kDefaultHalfWidth = 1.5;
inline constexpr int kDefaultResolution = 512;
inline constexpr int kDefaultMaxIter = 200;
inline constexpr int kMomentOrder = 6;
/// Brolin-drawn targets per n for the preimage-count diagnostic.
inline constexpr int kPreimageTargets = 200;
inline constexpr int kBoundaryPoints = 20;

struct Thresholds {
  /// KS distance of the regular-zero measure to arcsine at the largest n.
  double ks_max = 0.05;
  /// |gamma_{n,e}^{1/n} - 2| at the largest n.
  double gamma_root_gap_max = 0.15;
  /// max over the test points of |log|P_n(z)|/n - g(z)| at the largest n.
  double green_gap_max = 0.1;
  /// max_{1<=k<=6} |Chebyshev moment| of the Brolin sample at the largest n.
  double moment_max = 0.1;
  /// Allowed growth of the preimage count from the lower to the upper half of n_list.
  double preimage_growth_slack = 1.0;
  /// Root residual contract relative to the circle maximum.
  double root_residual = 1e-8;
  /// Forward-invariance fraction at eps = 3 x median nearest-neighbour spacing.
  double forward_invariance_min = 0.99;
};

/// Rectangle for the preimage-count diagnostic.
inline constexpr double kPreimageRect[4] = {1.5, 2.5, -0.5, 0.5};

/// Fixed off-interval test points for the Green-function gap.
inline constexpr std::array<std::array<double, 2>, 4> kGreenTestPoints{{{2.0, 0.0}, {1.0, 1.0}, {-3.0, 0.0}, {0.5, 2.0}}};

}  // namespace xjulia::cli
