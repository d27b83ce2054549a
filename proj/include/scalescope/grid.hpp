#pragma once

#include "scalescope/profile.hpp"
#include "scalescope/report.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scalescope {

/// A width x height array of palette values, row-major.
struct Grid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::string> cells;

  Grid() = default;
  Grid(std::size_t w, std::size_t h, std::vector<std::string> values);

  [[nodiscard]] std::size_t cell_count() const noexcept { return width * height; }
  [[nodiscard]] const std::string& at(std::size_t x, std::size_t y) const {
    return cells.at(y * width + x);
  }
  /// Distinct cell values, sorted.
  [[nodiscard]] std::vector<std::string> palette() const;
};

/// Label that asks for the class to be derived from the region's pattern.
inline constexpr std::string_view auto_class = "auto";

struct Region {
  std::vector<std::size_t> cells; ///< row-major cell indices
  std::string label{auto_class};
};

/// A partition of a grid into labelled regions.
struct GridTiling {
  std::vector<Region> regions;
  std::optional<std::size_t> angular_positions; ///< declared R_angle
  std::optional<std::size_t> color_levels;      ///< declared R_color
};

struct ClassOptions {
  /// Also identify patterns equal up to rotation or reflection.
  bool dihedral = false;
};

/// Throws PartitionError unless every cell belongs to exactly one non-empty region.
void validate_partition(const Grid& grid, const GridTiling& tiling);

/// Every cell its own region, labelled with its value.
GridTiling single_cell_tiling(const Grid& grid);

/// Regular lattice of block_w x block_h rectangles with auto classes.
GridTiling block_tiling(const Grid& grid, std::size_t block_w, std::size_t block_h);

/// Class key of a region: its bounding-box size and cell values, so two regions
/// share a key iff their patterns are equal up to translation (and, with
/// dihedral, up to rotation and reflection). Cells outside the region read ".".
std::string pattern_class(const Grid& grid, const Region& region, const ClassOptions& opts = {});

/// Profile whose symbols are class labels: f counts regions, the weight of a
/// class is its total cell count, scope is the region count.
SymbolProfile grid_profile(const Grid& grid, const GridTiling& tiling,
                           const ClassOptions& opts = {});

/// Report with per-axis resolution: grid size for single-cell tilings, block
/// counts for regular lattices, and bounding counts (regular = false) otherwise.
ScaleReport grid_report(const Grid& grid, const GridTiling& tiling, std::string scale_name = "grid",
                        const ClassOptions& opts = {});

/// Grid file: first line "W H", then H rows of W whitespace-separated values.
/// A row written as one W-character token is read one character per cell.
/// Blank lines and lines starting with '#' are skipped.
Grid parse_grid(std::string_view text);

/// Tiling file: "W H", H rows of W region ids, then optional lines
/// "classes [auto]" followed by "<region> <label>" pairs, "angle N" and
/// "colors N".
GridTiling parse_tiling(std::string_view text, const Grid& grid);

} // namespace scalescope
