#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "xjulia_cli/config.hpp"

namespace xjulia::cli {

enum ExitCode : int { kExitOk = 0, kExitNumerical = 1, kExitConfig = 2 };

/// Per n: zeros_n<N>.csv (kind,re,im), measure_n<N>.csv (re,im,weight) and
/// zeros_n<N>.json; plus zeros_summary.json. Returns kExitNumerical if any
/// residual contract failed.
int cmd_zeros(const ExperimentConfig& cfg, std::ostream& log);

/// Per n (or once for a raw polynomial): julia_<tag>.pgm and escape_<tag>.json.
int cmd_julia(const ExperimentConfig& cfg, std::ostream& log);

/// Per n: brolin_<tag>.csv (re,im) and brolin_<tag>.json; plus brolin_summary.json.
int cmd_brolin(const ExperimentConfig& cfg, std::ostream& log);

/// Aggregates zeros_summary.json and brolin_summary.json into report.json.
int cmd_report(const ExperimentConfig& cfg, std::ostream& log);

/// {"schema_version", "error": {"kind", "field", "message"}}
std::string error_json(const std::string& kind, const std::string& field, const std::string& message);

/// Full command-line entry point: parses flags, runs one command, prints a JSON
/// status line to `out` or an error JSON to `err`, and returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xjulia::cli
