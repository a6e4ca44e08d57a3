#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "xjulia/error.hpp"
#include "xjulia_cli/commands.hpp"

namespace xjulia::cli {

namespace {

struct Flags {
  std::string config;
  std::string preset;
  std::optional<double> alpha, beta, half_width;
  std::optional<int> n, burn_in, chains, resolution, max_iter;
  std::string n_list;
  bool n_list_given = false;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> thresholds;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ConfigError("n_list", "'" + item + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

ExperimentConfig build_config(const Flags& f) {
  ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
  if (!f.preset.empty()) {
    if (f.preset != "x1") throw ConfigError("preset", "only x1 is available");
    cfg.family = FamilySpec{};
  }
  if (f.alpha || f.beta) {
    if (cfg.family.is_raw()) throw ConfigError("alpha", "a raw polynomial has no Jacobi parameters");
    if (f.alpha) cfg.family.alpha = *f.alpha;
    if (f.beta) cfg.family.beta = *f.beta;
  }
  if (f.n && f.n_list_given) throw ConfigError("n", "give either --n or --n-list");
  if (f.n) cfg.n_list = {*f.n};
  if (f.n_list_given) cfg.n_list = parse_int_list(f.n_list);
  if (f.samples) cfg.samples = *f.samples;
  if (f.burn_in) cfg.burn_in = *f.burn_in;
  if (f.seed) cfg.seed = *f.seed;
  if (f.chains) cfg.chains = *f.chains;
  if (f.resolution) cfg.grid.resolution = *f.resolution;
  if (f.max_iter) cfg.grid.max_iter = *f.max_iter;
  if (f.half_width) cfg.grid.half_width = *f.half_width;
  if (!f.out.empty()) cfg.output_dir = f.out;
  for (const auto& kv : f.thresholds) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("threshold", "expected name=value, got '" + kv + "'");
    double v = 0.0;
    try {
      v = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("thresholds." + kv.substr(0, eq), "not a number");
    }
    set_threshold(cfg.thresholds, kv.substr(0, eq), v);
  }
  validate(cfg);
  return cfg;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exceptional Jacobi polynomials: zeros, Julia sets and Brolin measures"};
  app.name("xjulia");
  app.require_subcommand(1, 1);
  app.fallthrough();

  Flags f;
  app.add_option("--config", f.config, "JSON experiment config");
  app.add_option("--preset", f.preset, "Named family (x1)");
  app.add_option("--alpha", f.alpha, "Preset alpha");
  app.add_option("--beta", f.beta, "Preset beta");
  app.add_option("--n", f.n, "Single degree index");
  app.add_option("--n-list", f.n_list, "Comma-separated ascending indices")->each([&](const std::string&) {
    f.n_list_given = true;
  });
  app.add_option("--samples", f.samples, "Brolin samples per n");
  app.add_option("--burn-in", f.burn_in, "Discarded backward steps per chain");
  app.add_option("--seed", f.seed, "64-bit seed");
  app.add_option("--chains", f.chains, "Independent backward orbits");
  app.add_option("--resolution", f.resolution, "Raster pixels per side");
  app.add_option("--max-iter", f.max_iter, "Raster iteration cap");
  app.add_option("--half-width", f.half_width, "Raster half width");
  app.add_option("--out", f.out, "Output directory");
  app.add_option("--threshold", f.thresholds, "Override a threshold, name=value");

  const std::pair<const char*, int (*)(const ExperimentConfig&, std::ostream&)> commands[] = {
      {"zeros", cmd_zeros}, {"julia", cmd_julia}, {"brolin", cmd_brolin}, {"report", cmd_report}};
  const char* help[] = {"Zeros, zero-counting measures and leading-coefficient diagnostics",
                        "Escape-time rasters (PGM) and escape radii",
                        "Brolin samples by randomized inverse iteration",
                        "Aggregate prior outputs into report.json"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) subs.push_back(app.add_subcommand(commands[i].first, help[i]));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << error_json("config", "arguments", e.what()) << '\n';
    return kExitConfig;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      const auto cfg = build_config(f);
      const int code = commands[i].second(cfg, err);
      nlohmann::json status{{"schema_version", kSchemaVersion},
                            {"command", commands[i].first},
                            {"output_dir", cfg.output_dir.string()},
                            {"exit_code", code}};
      out << status.dump() << '\n';
      return code;
    } catch (const ConfigError& e) {
      err << error_json("config", e.field(), e.what()) << '\n';
      return kExitConfig;
    } catch (const NumericalError& e) {
      err << error_json("numerical", "", e.what()) << '\n';
      return kExitNumerical;
    } catch (const std::exception& e) {
      err << error_json("io", "", e.what()) << '\n';
      return kExitConfig;
    }
  }
  return kExitConfig;
}

}  // namespace xjulia::cli
