#pragma once

#include <map>
#include <optional>
#include <string>

#include "metrize/grid.hpp"
#include "metrize/so3.hpp"

namespace metrize {

enum class InputKind { ConnectionFamily, ConnectionFull, Metric };

/// Parsed CLI configuration: a flat text file of key = value lines with
/// one section per concern ([input], [grid], [tolerances], [constants]).
/// Expression values are kept as text; commands parse them against the
/// coordinate variables appropriate for the run.
struct RunConfig {
  int dimension = 3;
  InputKind kind = InputKind::ConnectionFamily;
  std::optional<Signature> signature;
  std::map<std::string, std::string> exprs;
  std::map<std::string, GridAxis> grid_axes;
  Tolerances tol;
  std::map<std::string, double> constants;
  std::string raw;

  double constant_or(const std::string& name, double fallback) const;
  bool has_constant(const std::string& name) const;
};

/// Throws ConfigError with a diagnostic naming the offending field.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Applies `name=lo,hi,count` to the grid section.
void apply_grid_override(RunConfig& cfg, const std::string& spec);

/// Chart the configured input lives on.
ChartId input_chart(const RunConfig& cfg);

/// Grid for the configured input: spec defaults overlaid with [grid] keys.
GridSpec build_grid(const RunConfig& cfg);

}  // namespace metrize
