#pragma once

#include "scalescope/json_io.hpp"
#include "scalescope/report.hpp"
#include "scalescope/search.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace scalescope::cli {

inline constexpr const char* tool_name = "scalescope";
inline constexpr const char* tool_version = "0.1.0";

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_input = 2, exit_internal = 3 };

/// Everything that determines a command's output. Written into every artifact.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> scales;
  std::string mode = "text"; ///< text, bytes or auto (text when the file is valid UTF-8)
  std::uint64_t seed = 1;
  std::size_t restarts = 4;
  std::size_t max_passes = 200;
  std::size_t oracle_cap = default_oracle_cap;
  std::string acceptance = "strict";
  std::string format = "json";
  std::optional<std::size_t> target_S;
  bool oracle = false;
  bool dihedral = false;

  [[nodiscard]] Json to_json() const;
  [[nodiscard]] SearchConfig search_config() const;
};

/// Manifest plus options that never change output bytes.
struct Options {
  RunManifest manifest;
  std::string out_dir; ///< where artifacts go; empty writes stdout only
  std::size_t jobs = 1;
};

/// Per-file, per-scale reports. JSON or TSV on `out`.
int cmd_analyze(const Options& opts, std::ostream& out, std::ostream& err);
/// Fundamental-scale search on one file; profile JSON on `out`, segmentation,
/// profile and trace files under out_dir.
int cmd_search(const Options& opts, std::ostream& out, std::ostream& err);
/// Downgrades a profile (or an already downgraded profile) JSON to target_S points.
int cmd_downgrade(const Options& opts, std::ostream& out, std::ostream& err);
/// Report of a grid file under a tiling file (single cells when none is given).
int cmd_grid(const Options& opts, std::ostream& out, std::ostream& err);
/// Analyzes every regular file of a directory; rows sorted by path.
int cmd_corpus(const Options& opts, std::ostream& out, std::ostream& err);

/// Parses the command line and dispatches. Reads SCALESCOPE_SEED when --seed
/// is absent.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Column header of every TSV table: path, scale, L_units, scope_L,
/// diversity_D, entropy_h, specific_d.
std::string tsv_header();
std::string tsv_row(const std::string& path, const ScaleReport& report);

} // namespace scalescope::cli
