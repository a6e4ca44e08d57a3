#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "xjulia/dynamics.hpp"
#include "xjulia/measures.hpp"
#include "xjulia/zeros.hpp"

namespace xjulia {

/// Binary PGM ("P5"), maxval 255, pixel = floor(255 * count / max_iter), top row first.
void write_pgm(const std::filesystem::path& path, const RasterGrid& raster);
std::string pgm_bytes(const RasterGrid& raster);

/// CSV with header kind,re,im; regular zeros first.
void write_zeros_csv(const std::filesystem::path& path, const ZeroClassification& zc);
/// CSV with header re,im,weight.
void write_measure_csv(const std::filesystem::path& path, const EmpiricalMeasure& mu);
/// CSV with header re,im.
void write_points_csv(const std::filesystem::path& path, std::span<const cplx> points);

/// Reads a CSV written by write_points_csv (extra columns are ignored).
std::vector<cplx> read_points_csv(const std::filesystem::path& path);

/// Round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace xjulia
