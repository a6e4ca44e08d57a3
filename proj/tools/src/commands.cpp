#include "xjulia_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "json.hpp"
#include "xjulia/error.hpp"
#include "xjulia/io.hpp"
#include "xjulia/measures.hpp"
#include "xjulia/zeros.hpp"

namespace xjulia::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json base_json() { return json{{"schema_version", kSchemaVersion}}; }

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error("write failed: " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("output_dir", "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("output_dir", path.string() + " is not valid JSON: " + e.what());
  }
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string tag(int n) { return "n" + std::to_string(n); }

// The maps studied by julia/brolin: one per n, or the raw polynomial alone.
struct MapEntry {
  std::string tag;
  json n;
  Poly poly;
};

struct MapSet {
  std::vector<MapEntry> maps;
  std::vector<cplx> poles;
  bool raw = false;
};

MapSet build_maps(const ExperimentConfig& cfg) {
  MapSet s;
  if (cfg.family.is_raw()) {
    s.raw = true;
    s.maps.push_back({"raw", nullptr, Poly::monomial(cfg.family.raw)});
    return s;
  }
  const ExceptionalFamily fam(cfg.family.darboux());
  s.poles = fam.data().pole_set();
  for (int n : cfg.n_list) s.maps.push_back({tag(n), n, fam.chebyshev_coeffs(n)});
  return s;
}

std::vector<EscapeData> escape_data(const MapSet& s) {
  std::vector<Poly> polys;
  for (const auto& m : s.maps) polys.push_back(m.poly);
  return escape_radii(polys);
}

json grid_json(const GridSpec& g) {
  return {{"center", cplx_json(g.center)},
          {"half_width", g.half_width},
          {"resolution", g.resolution},
          {"max_iter", g.max_iter}};
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

double green_gap(const ExceptionalFamily& fam, int n) {
  double worst = 0.0;
  for (const auto& [re, im] : kGreenTestPoints) {
    const cplx z{re, im};
    const double lhs = std::log(std::abs(fam.eval(n, z))) / n;
    worst = std::max(worst, std::abs(lhs - green_complement_interval(z)));
  }
  return worst;
}

// Radius for the boundary-preimage check: past 1 and past every pole of b_tilde.
double boundary_radius(const std::vector<cplx>& poles) {
  double r = 1.0;
  for (const auto& p : poles) r = std::max(r, std::abs(p));
  return r + 1.0;
}

}  // namespace

std::string error_json(const std::string& kind, const std::string& field, const std::string& message) {
  json j = base_json();
  j["error"] = {{"kind", kind}, {"field", field}, {"message", message}};
  return j.dump();
}

int cmd_zeros(const ExperimentConfig& cfg, std::ostream& log) {
  if (cfg.family.is_raw()) throw ConfigError("family", "zeros needs an exceptional family, not a raw polynomial");
  if (cfg.n_list.empty()) return kExitOk;
  const ExceptionalFamily fam(cfg.family.darboux());
  const auto poles = fam.data().pole_set();
  fs::create_directories(cfg.output_dir);

  bool ok = true;
  json rows = json::array();
  for (int n : cfg.n_list) {
    json j = base_json();
    j["n"] = n;
    try {
      const auto zc = classify_zeros(fam, n);
      write_zeros_csv(cfg.output_dir / ("zeros_" + tag(n) + ".csv"), zc);
      const auto mu = zero_counting_measure(zc);
      write_measure_csv(cfg.output_dir / ("measure_" + tag(n) + ".csv"), mu);
      const auto lc = fam.leading_coeff(n);
      const double root = std::pow(std::abs(lc.value), 1.0 / n);
      j["m"] = zc.m;
      j["regular"] = zc.regular.size();
      j["exceptional"] = zc.exceptional.size();
      j["ks"] = ks_distance_real(mu, arcsine_cdf);
      j["exc_dist"] = zc.exceptional.empty() ? json(nullptr) : json(exceptional_distance(zc, poles));
      j["max_residual"] = zc.max_residual;
      j["residual_ok"] = zc.max_residual <= cfg.thresholds.root_residual;
      j["gamma_e"] = lc.value;
      j["gamma_root"] = root;
      j["gamma_root_gap"] = std::abs(root - 2.0);
      j["green_gap"] = green_gap(fam, n);
      ok = ok && j["residual_ok"].get<bool>();
    } catch (const NumericalError& e) {
      ok = false;
      j["error"] = e.what();
      log << "zeros n=" << n << ": " << e.what() << '\n';
    }
    write_json(cfg.output_dir / ("zeros_" + tag(n) + ".json"), j);
    rows.push_back(j);
  }
  json summary = base_json();
  summary["rows"] = rows;
  summary["residual_contracts_pass"] = ok;
  write_json(cfg.output_dir / "zeros_summary.json", summary);
  return ok ? kExitOk : kExitNumerical;
}

int cmd_julia(const ExperimentConfig& cfg, std::ostream&) {
  if (!cfg.family.is_raw() && cfg.n_list.empty()) return kExitOk;
  const MapSet maps = build_maps(cfg);
  const auto escapes = escape_data(maps);
  fs::create_directories(cfg.output_dir);
  const int threads = worker_threads();
  for (std::size_t i = 0; i < maps.maps.size(); ++i) {
    const auto& e = escapes[i];
    const auto raster = escape_raster(e, cfg.grid, threads);
    write_pgm(cfg.output_dir / ("julia_" + maps.maps[i].tag + ".pgm"), raster);
    std::size_t kept = 0;
    double reach = 0.0;
    const int res = cfg.grid.resolution;
    for (int r = 0; r < res; ++r) {
      for (int c = 0; c < res; ++c) {
        if (raster.escaped(r, c)) continue;
        ++kept;
        reach = std::max(reach, std::abs(raster.pixel_center(r, c)));
      }
    }
    json j = base_json();
    j["n"] = maps.maps[i].n;
    j["degree"] = e.poly.degree();
    j["R_p"] = e.escape_radius;
    j["R_tilde"] = e.uniform_radius;
    j["grid"] = grid_json(cfg.grid);
    j["non_escaped_pixels"] = kept;
    j["max_non_escaped_modulus"] = reach;
    j["inside_R_tilde"] = reach < e.uniform_radius;
    write_json(cfg.output_dir / ("escape_" + maps.maps[i].tag + ".json"), j);
  }
  return kExitOk;
}

int cmd_brolin(const ExperimentConfig& cfg, std::ostream&) {
  if (!cfg.family.is_raw() && cfg.n_list.empty()) return kExitOk;
  const MapSet maps = build_maps(cfg);
  const auto escapes = escape_data(maps);
  fs::create_directories(cfg.output_dir);
  const Rect region{kPreimageRect[0], kPreimageRect[1], kPreimageRect[2], kPreimageRect[3]};
  const double radius = boundary_radius(maps.poles);

  json rows = json::array();
  std::vector<double> max_moments, mean_ims, counts;
  std::vector<char> contained;
  double max_bound = 0.0;
  for (std::size_t i = 0; i < maps.maps.size(); ++i) {
    const auto& e = escapes[i];
    BrolinOptions opt;
    opt.samples = cfg.samples;
    opt.burn_in = cfg.burn_in;
    opt.seed = cfg.seed;
    opt.chains = cfg.chains;
    opt.threads = worker_threads();
    const auto s = brolin_sample(e, opt);
    write_points_csv(cfg.output_dir / ("brolin_" + maps.maps[i].tag + ".csv"), s.points);

    const auto m = chebyshev_moments(s.measure(), kMomentOrder);
    json moments = json::array(), moment_abs = json::array();
    double max_m = 0.0;
    for (int k = 1; k <= kMomentOrder; ++k) {
      moments.push_back(cplx_json(m[k]));
      moment_abs.push_back(std::abs(m[k]));
      max_m = std::max(max_m, std::abs(m[k]));
    }
    std::vector<double> ims(s.points.size());
    double bound = 0.0;
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      ims[k] = std::abs(s.points[k].imag());
      bound = std::max(bound, std::abs(s.points[k]));
    }
    const double mean_im = pairwise_sum(ims) / static_cast<double>(ims.size());
    max_bound = std::max(max_bound, bound);

    json j = base_json();
    j["n"] = maps.maps[i].n;
    j["degree"] = s.degree;
    j["samples"] = s.points.size();
    j["burn_in"] = s.burn_in;
    j["seed"] = s.seed;
    j["chains"] = s.chains;
    j["moments"] = moments;
    j["moment_abs"] = moment_abs;
    j["max_abs_moment"] = max_m;
    j["mean_abs_im"] = mean_im;
    j["bound"] = bound;
    j["R_p"] = e.escape_radius;
    j["R_tilde"] = e.uniform_radius;
    if (s.points.size() >= 2) {
      const double eps = 3.0 * median_nn_spacing(s.points);
      j["forward_invariance"] = eps > 0.0 ? json(forward_invariance_check(e, s, eps)) : json(nullptr);
    }
    if (!maps.raw) {
      int worst = 0;
      const std::size_t stride = std::max<std::size_t>(1, s.points.size() / kPreimageTargets);
      for (std::size_t k = 0; k < s.points.size(); k += stride) {
        worst = std::max(worst, preimage_count_in_set(e, s.points[k], region));
      }
      const bool inside = boundary_preimages_inside(e, radius, kBoundaryPoints);
      j["preimage_max_count"] = worst;
      j["boundary_radius"] = radius;
      j["boundary_preimages_inside"] = inside;
      counts.push_back(worst);
      contained.push_back(inside);
    }
    max_moments.push_back(max_m);
    mean_ims.push_back(mean_im);
    write_json(cfg.output_dir / ("brolin_" + maps.maps[i].tag + ".json"), j);
    rows.push_back(j);
  }

  json summary = base_json();
  summary["rows"] = rows;
  summary["R_tilde"] = escapes.front().uniform_radius;
  summary["max_bound"] = max_bound;
  summary["bound_ok"] = max_bound <= escapes.front().uniform_radius + 1e-6;
  summary["max_abs_moment_decreasing"] = strictly_decreasing(max_moments);
  summary["mean_abs_im_decreasing"] = strictly_decreasing(mean_ims);
  if (!maps.raw) {
    const std::size_t half = counts.size() / 2;
    if (half > 0) {
      const double low = *std::max_element(counts.begin(), counts.begin() + static_cast<long>(half));
      const double high = *std::max_element(counts.end() - static_cast<long>(half), counts.end());
      summary["preimage_low_max"] = low;
      summary["preimage_high_max"] = high;
      summary["preimage_bounded"] = high <= low + cfg.thresholds.preimage_growth_slack;
    } else {
      summary["preimage_bounded"] = nullptr;
    }
    // smallest n from which containment holds for every later n
    json threshold = nullptr;
    for (std::size_t k = contained.size(); k-- > 0 && contained[k];) threshold = cfg.n_list[k];
    summary["boundary_threshold_n"] = threshold;
  }
  write_json(cfg.output_dir / "brolin_summary.json", summary);
  return kExitOk;
}

int cmd_report(const ExperimentConfig& cfg, std::ostream&) {
  const fs::path zeros_path = cfg.output_dir / "zeros_summary.json";
  if (!fs::exists(zeros_path)) {
    throw ConfigError("output_dir", "no zeros results in " + cfg.output_dir.string() + "; run `xjulia zeros` first");
  }
  const auto& t = cfg.thresholds;
  const json zeros = read_json(zeros_path);

  std::vector<double> ks, exc, gap, green;
  json lead_rows = json::array(), green_rows = json::array(), zero_rows = json::array();
  bool zeros_complete = true;
  for (const auto& r : zeros.at("rows")) {
    if (r.contains("error")) {
      zeros_complete = false;
      continue;
    }
    lead_rows.push_back({{"n", r["n"]}, {"gamma_e", r["gamma_e"]}, {"root", r["gamma_root"]}, {"gap", r["gamma_root_gap"]}});
    green_rows.push_back({{"n", r["n"]}, {"max_gap", r["green_gap"]}});
    zero_rows.push_back({{"n", r["n"]}, {"ks", r["ks"]}, {"exc_dist", r["exc_dist"]},
                         {"regular", r["regular"]}, {"exceptional", r["exceptional"]}});
    ks.push_back(r["ks"].get<double>());
    gap.push_back(r["gamma_root_gap"].get<double>());
    green.push_back(r["green_gap"].get<double>());
    if (!r["exc_dist"].is_null()) exc.push_back(r["exc_dist"].get<double>());
  }
  const auto verdict = [&](bool computable, bool value) { return computable && zeros_complete ? json(value) : json(nullptr); };
  const bool have = !ks.empty();

  json report = base_json();
  report["defaults_version"] = kDefaultsVersion;
  report["leading_coefficient_root"] = {
      {"rows", lead_rows},
      {"threshold", t.gamma_root_gap_max},
      {"pass", verdict(have, have && gap.back() <= t.gamma_root_gap_max && (gap.size() < 2 || gap.back() < gap.front()))}};
  report["green_gap"] = {{"rows", green_rows},
                         {"points", kGreenTestPoints},
                         {"threshold", t.green_gap_max},
                         {"pass", verdict(have, have && green.back() <= t.green_gap_max && strictly_decreasing(green))}};
  report["zero_distribution"] = {
      {"rows", zero_rows},
      {"threshold", t.ks_max},
      {"pass", verdict(have, have && ks.back() <= t.ks_max && (ks.size() < 2 || ks.back() < ks.front()) &&
                                 strictly_decreasing(exc))}};

  const fs::path brolin_path = cfg.output_dir / "brolin_summary.json";
  json moments = nullptr, preimages = nullptr;
  if (fs::exists(brolin_path)) {
    const json b = read_json(brolin_path);
    json mrows = json::array(), prows = json::array();
    double last = 0.0;
    for (const auto& r : b.at("rows")) {
      mrows.push_back({{"n", r["n"]}, {"max_abs_moment", r["max_abs_moment"]}, {"mean_abs_im", r["mean_abs_im"]}});
      if (r.contains("preimage_max_count")) prows.push_back({{"n", r["n"]}, {"max_count", r["preimage_max_count"]}});
      last = r["max_abs_moment"].get<double>();
    }
    const bool any = !mrows.empty();
    moments = {{"rows", mrows},
               {"threshold", t.moment_max},
               {"pass", any && last <= t.moment_max && b.value("max_abs_moment_decreasing", false) &&
                            b.value("mean_abs_im_decreasing", false)}};
    preimages = {{"rows", prows},
                 {"slack", t.preimage_growth_slack},
                 {"pass", b.contains("preimage_bounded") ? b["preimage_bounded"] : json(nullptr)}};
  }
  report["brolin_moments"] = moments.is_null() ? json{{"rows", nullptr}, {"pass", nullptr}} : moments;
  report["preimage_counts"] = preimages.is_null() ? json{{"rows", nullptr}, {"pass", nullptr}} : preimages;

  json overall = true;
  for (const char* key : {"leading_coefficient_root", "green_gap", "zero_distribution", "brolin_moments", "preimage_counts"}) {
    const auto& p = report[key]["pass"];
    if (p.is_null()) {
      if (overall == true) overall = nullptr;
    } else if (!p.get<bool>()) {
      overall = false;
    }
  }
  report["pass"] = overall;
  write_json(cfg.output_dir / "report.json", report);
  return overall == false ? kExitNumerical : kExitOk;
}

}  // namespace xjulia::cli
