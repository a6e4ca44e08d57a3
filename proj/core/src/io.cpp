#include "xjulia/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "xjulia/error.hpp"

namespace xjulia {

namespace {

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string pgm_bytes(const RasterGrid& raster) {
  const int res = raster.spec.resolution;
  std::string out = "P5\n" + std::to_string(res) + " " + std::to_string(res) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + raster.counts.size());
  const long long max_iter = raster.spec.max_iter;
  for (std::size_t i = 0; i < raster.counts.size(); ++i) {
    out[header + i] = static_cast<char>(static_cast<unsigned char>(255LL * raster.counts[i] / max_iter));
  }
  return out;
}

void write_pgm(const std::filesystem::path& path, const RasterGrid& raster) {
  auto out = open_out(path, true);
  const auto bytes = pgm_bytes(raster);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  finish(out, path);
}

void write_zeros_csv(const std::filesystem::path& path, const ZeroClassification& zc) {
  auto out = open_out(path);
  out << "kind,re,im\n";
  for (double x : zc.regular) out << "regular," << format_double(x) << ",0\n";
  for (const auto& z : zc.exceptional) {
    out << "exceptional," << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
  }
  finish(out, path);
}

void write_measure_csv(const std::filesystem::path& path, const EmpiricalMeasure& mu) {
  auto out = open_out(path);
  out << "re,im,weight\n";
  const auto p = mu.points();
  const auto w = mu.weights();
  for (std::size_t i = 0; i < p.size(); ++i) {
    out << format_double(p[i].real()) << ',' << format_double(p[i].imag()) << ',' << format_double(w[i]) << '\n';
  }
  finish(out, path);
}

void write_points_csv(const std::filesystem::path& path, std::span<const cplx> points) {
  auto out = open_out(path);
  out << "re,im\n";
  for (const auto& z : points) out << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
  finish(out, path);
}

std::vector<cplx> read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);  // header
  std::vector<cplx> pts;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string re, im;
    if (!std::getline(ss, re, ',') || !std::getline(ss, im, ',')) {
      throw Error(path.string() + ":" + std::to_string(lineno) + ": expected re,im");
    }
    try {
      pts.emplace_back(std::stod(re), std::stod(im));
    } catch (const std::exception&) {
      throw Error(path.string() + ":" + std::to_string(lineno) + ": not a number");
    }
  }
  return pts;
}

}  // namespace xjulia
