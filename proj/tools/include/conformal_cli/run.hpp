#pragma once

#include "conformal_cli/report.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace conformal::cli {

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
  std::string command;
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  bool plot = false;
  std::optional<std::uint64_t> seed;
  bool timing = false;
};

const std::vector<std::string>& commands();

/// Loads the config, dispatches, and writes report.json (and plot data) under `out`.
/// Never throws for documented failures; they become error records.
RunReport run(const RunOptions& options);

/// Writes `<dir>/<stem>_chart<k>.csv` grids of |s| with header u,v,value and
/// `<dir>/points.csv` with header chart,u,v,index.
void emit_plot_data(const std::filesystem::path& dir, const std::string& stem, const EASection& s,
                    const Surface& surface, std::size_t n, const std::vector<ConformalPoint>& points);

}  // namespace conformal::cli
