#include "xjulia_cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "xjulia/error.hpp"
#include "xjulia/jacobi.hpp"

namespace xjulia::cli {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where.empty() ? key : where + "." + key, "unknown key");
  }
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
  return v;
}

long long get_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ConfigError(field, "expected an integer");
  return j.get<long long>();
}

std::vector<double> get_real_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

int get_sign(const json& j, const std::string& field) {
  const auto v = get_int(j, field);
  if (v != 1 && v != -1) throw ConfigError(field, "must be +1 or -1");
  return static_cast<int>(v);
}

FamilySpec parse_family(const json& j) {
  FamilySpec f;
  if (j.is_string()) {
    if (j.get<std::string>() != "x1") throw ConfigError("family", "unknown preset '" + j.get<std::string>() + "'");
    return f;
  }
  if (!j.is_object()) throw ConfigError("family", "expected a preset name or an object");
  if (j.contains("raw")) {
    check_keys(j, "family", {"raw"});
    f.kind = FamilySpec::Kind::raw;
    const auto& r = j["raw"];
    if (!r.is_array() || r.empty()) throw ConfigError("family.raw", "expected a nonempty coefficient array");
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::string field = "family.raw[" + std::to_string(i) + "]";
      if (r[i].is_array()) {
        if (r[i].size() != 2) throw ConfigError(field, "complex coefficients are [re, im] pairs");
        f.raw.emplace_back(get_number(r[i][0], field), get_number(r[i][1], field));
      } else {
        f.raw.emplace_back(get_number(r[i], field), 0.0);
      }
    }
    return f;
  }
  check_keys(j, "family", {"preset", "alpha", "beta", "eps1", "eps2", "b", "bw", "lambda_tilde"});
  if (j.contains("preset")) {
    if (!j["preset"].is_string() || j["preset"].get<std::string>() != "x1") {
      throw ConfigError("family.preset", "only \"x1\" is available");
    }
    if (j.contains("alpha")) f.alpha = get_number(j["alpha"], "family.alpha");
    if (j.contains("beta")) f.beta = get_number(j["beta"], "family.beta");
    return f;
  }
  f.kind = FamilySpec::Kind::custom;
  for (const char* key : {"alpha", "beta", "b", "bw", "lambda_tilde"}) {
    if (!j.contains(key)) throw ConfigError(std::string("family.") + key, "required");
  }
  f.alpha = get_number(j["alpha"], "family.alpha");
  f.beta = get_number(j["beta"], "family.beta");
  f.b = get_real_list(j["b"], "family.b");
  f.bw = get_real_list(j["bw"], "family.bw");
  f.lambda_tilde = get_number(j["lambda_tilde"], "family.lambda_tilde");
  if (j.contains("eps1")) f.eps1 = get_sign(j["eps1"], "family.eps1");
  if (j.contains("eps2")) f.eps2 = get_sign(j["eps2"], "family.eps2");
  return f;
}

GridSpec parse_grid(const json& j, GridSpec g) {
  if (!j.is_object()) throw ConfigError("grid", "expected an object");
  check_keys(j, "grid", {"center", "half_width", "resolution", "max_iter"});
  if (j.contains("center")) {
    const auto c = get_real_list(j["center"], "grid.center");
    if (c.size() != 2) throw ConfigError("grid.center", "expected [re, im]");
    g.center = {c[0], c[1]};
  }
  if (j.contains("half_width")) g.half_width = get_number(j["half_width"], "grid.half_width");
  if (j.contains("resolution")) g.resolution = static_cast<int>(get_int(j["resolution"], "grid.resolution"));
  if (j.contains("max_iter")) g.max_iter = static_cast<int>(get_int(j["max_iter"], "grid.max_iter"));
  return g;
}

}  // namespace

DarbouxData FamilySpec::darboux() const {
  try {
    switch (kind) {
      case Kind::preset:
        return make_x1_preset(alpha, beta);
      case Kind::custom:
        return make_darboux_data(JacobiParams(alpha, beta), b, bw, lambda_tilde, eps1, eps2);
      case Kind::raw:
        break;
    }
  } catch (const ConfigError& e) {
    throw ConfigError("family." + e.field(), e.what());
  } catch (const NumericalError& e) {
    throw ConfigError("family", e.what());
  }
  throw ConfigError("family", "a raw polynomial has no Darboux data");
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config", "top level must be an object");
  check_keys(j, "", {"schema_version", "family", "n_list", "samples", "burn_in", "seed", "chains", "grid",
                     "output_dir", "thresholds"});
  ExperimentConfig cfg;
  if (j.contains("schema_version") && get_int(j["schema_version"], "schema_version") != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported, expected " + std::to_string(kSchemaVersion));
  }
  if (j.contains("family")) cfg.family = parse_family(j["family"]);
  if (j.contains("n_list")) {
    const auto& l = j["n_list"];
    if (!l.is_array()) throw ConfigError("n_list", "expected an array of integers");
    cfg.n_list.clear();
    for (std::size_t i = 0; i < l.size(); ++i) {
      cfg.n_list.push_back(static_cast<int>(get_int(l[i], "n_list[" + std::to_string(i) + "]")));
    }
  }
  if (j.contains("samples")) {
    const auto v = get_int(j["samples"], "samples");
    if (v < 1) throw ConfigError("samples", "must be positive");
    cfg.samples = static_cast<std::size_t>(v);
  }
  if (j.contains("burn_in")) cfg.burn_in = static_cast<int>(get_int(j["burn_in"], "burn_in"));
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed", "expected an unsigned 64-bit integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("chains")) cfg.chains = static_cast<int>(get_int(j["chains"], "chains"));
  if (j.contains("grid")) cfg.grid = parse_grid(j["grid"], cfg.grid);
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw ConfigError("output_dir", "expected a path string");
    cfg.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("thresholds")) {
    const auto& t = j["thresholds"];
    if (!t.is_object()) throw ConfigError("thresholds", "expected an object");
    for (const auto& [key, value] : t.items()) {
      set_threshold(cfg.thresholds, key, get_number(value, "thresholds." + key));
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const ExperimentConfig& cfg) {
  int m = 0;
  if (!cfg.family.is_raw()) {
    m = cfg.family.darboux().m;
  } else {
    const Poly p = Poly::monomial(cfg.family.raw);
    if (p.degree() < 2) throw ConfigError("family.raw", "polynomial degree must be at least 2");
  }
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    const int n = cfg.n_list[i];
    const std::string field = "n_list[" + std::to_string(i) + "]";
    if (n < 1) throw ConfigError(field, "must be positive");
    if (n + m > kDegreeCap) throw ConfigError(field, "n + m exceeds the degree cap " + std::to_string(kDegreeCap));
    if (i > 0 && n <= cfg.n_list[i - 1]) throw ConfigError(field, "n_list must be strictly ascending");
  }
  if (cfg.samples < 1 || cfg.samples > 1000000) throw ConfigError("samples", "must lie in [1, 1000000]");
  if (cfg.burn_in < 1) throw ConfigError("burn_in", "must be positive");
  if (cfg.chains < 1 || static_cast<std::size_t>(cfg.chains) > cfg.samples) {
    throw ConfigError("chains", "must lie in [1, samples]");
  }
  if (cfg.grid.resolution < 1 || cfg.grid.resolution > 8192) throw ConfigError("resolution", "must lie in [1, 8192]");
  if (cfg.grid.max_iter < 1 || cfg.grid.max_iter > 10000) throw ConfigError("max_iter", "must lie in [1, 10000]");
  if (!(cfg.grid.half_width > 0.0)) throw ConfigError("grid.half_width", "must be positive");
  if (cfg.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
}

void set_threshold(Thresholds& t, const std::string& name, double value) {
  const std::pair<const char*, double*> table[] = {
      {"ks_max", &t.ks_max},
      {"gamma_root_gap_max", &t.gamma_root_gap_max},
      {"green_gap_max", &t.green_gap_max},
      {"moment_max", &t.moment_max},
      {"preimage_growth_slack", &t.preimage_growth_slack},
      {"root_residual", &t.root_residual},
      {"forward_invariance_min", &t.forward_invariance_min},
  };
  for (const auto& [key, ptr] : table) {
    if (name == key) {
      if (!std::isfinite(value)) throw ConfigError("thresholds." + name, "must be finite");
      *ptr = value;
      return;
    }
  }
  throw ConfigError("thresholds." + name, "unknown threshold");
}

int worker_threads() {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("XJULIA_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<long>(n, cap);
  }
  return n;
}

}  // namespace xjulia::cli
