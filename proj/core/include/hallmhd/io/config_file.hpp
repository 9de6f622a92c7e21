#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hallmhd/analysis/dependence.hpp"
#include "hallmhd/solver/config.hpp"

namespace hallmhd::io {

/// Everything a subcommand may read from a config file. Keys absent from
/// the file keep the defaults below.
struct ExperimentConfig {
  solver::SimConfig sim;
  analysis::PerturbationSpec perturbation;
  /// cont-dep
  std::vector<double> eps{1e-2, 1e-3, 1e-4};
  std::vector<int> j_list{2, 3, 4, 5};
  double headroom = 1.1;
  /// energy-check / diff-check shells
  std::vector<int> shells{0, 1, 2};
  /// diff-check perturbation amplitude
  double diff_eps = 1e-2;
  /// Single-precision coefficient blocks in snapshots (the default) or
  /// lossless double precision.
  bool snapshot_double = false;
};

/// A key override "section.key=value" or "key=value" (top level).
using Override = std::pair<std::string, std::string>;

/// Throws ConfigError for malformed text (with the line number), unknown
/// keys or sections, bad values and failed validation.
ExperimentConfig parse_config(std::string_view text, const std::vector<Override>& overrides = {},
                              std::string_view source = "<config>");
/// Reads an INI file, or the config recorded in a run manifest (JSON).
ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<Override>& overrides = {});

/// Canonical INI rendering with every key present, in a fixed order. Parsing
/// the result gives back an equal config.
std::string canonical_config(const ExperimentConfig& config);

/// Splits "a.b=c" into {"a.b", "c"}. Throws ConfigError without '='.
Override parse_override(std::string_view text);

}  // namespace hallmhd::io
