#pragma once

#include "scalescope/profile.hpp"
#include "scalescope/segmentation.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scalescope {

/// Resolution, scope, scale, entropy and specific diversity of one
/// interpretation.
struct ScaleReport {
  std::string scale_name;
  std::size_t total_units = 0;         ///< L_A, elementary units observed
  std::vector<std::size_t> resolution; ///< R per dimension
  std::vector<double> density;         ///< r = R / Dim, empty unless dims were given
  bool regular = true;                 ///< false: resolution holds bounding counts only
  std::optional<std::size_t> angular_positions;
  std::optional<std::size_t> color_levels;
  std::size_t scope = 0;     ///< L
  std::size_t diversity = 0; ///< D
  double entropy = 0.0;      ///< h
  double specific_diversity = 0.0; ///< d = D / L

  friend bool operator==(const ScaleReport&, const ScaleReport&) = default;
};

/// Summarises a profile. `resolution` defaults to {total_units}.
ScaleReport report_from_profile(const SymbolProfile& profile, std::string scale_name,
                                std::vector<std::size_t> resolution = {});

/// One-dimensional report of a segmentation. When `dims` is non-empty it gives
/// the physical extent of each dimension and the density r = R / Dim is filled.
ScaleReport scale_report(const Segmentation& seg, std::string scale_name,
                         std::span<const double> dims = {});

/// Checks 0 <= h <= 1, 1 <= D <= L and 0 < d <= 1; throws InvariantViolation.
void check_report(const ScaleReport& report);

} // namespace scalescope
