#pragma once

#include "scalescope/profile.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace scalescope {

/// A point of a ranked profile: where it sits and how much mass it carries.
struct RankedPoint {
  double rank = 0.0;
  double mass = 0.0;

  friend bool operator==(const RankedPoint&, const RankedPoint&) = default;
};

struct DowngradedPoint {
  double rank = 0.0;  ///< mass-weighted mean rank of the members
  double mass = 0.0;  ///< summed member mass
  std::size_t first = 0; ///< first member, 1-based position in the input
  std::size_t last = 0;  ///< last member, inclusive

  friend bool operator==(const DowngradedPoint&, const DowngradedPoint&) = default;
};

/// A ranked profile collapsed to at most target_S points.
struct DowngradedProfile {
  std::vector<DowngradedPoint> points; ///< non-increasing in mass
  std::size_t source_D = 0;
  std::size_t target_S = 0;
  /// rank_order[k] is the index into `points` of the k-th group along the
  /// input ranks, i.e. the order before sorting by mass.
  std::vector<std::size_t> rank_order;

  [[nodiscard]] std::vector<RankedPoint> ranked() const;
};

/// Group sizes for collapsing D ranked points into min(S, D) contiguous groups
/// with boundaries equally spaced in log(rank). Every group is non-empty.
/// Points of equal mass form a run whose members are spread evenly over the
/// run's log-rank span, so a flat profile splits into equal groups.
std::vector<std::size_t> log_rank_groups(std::span<const double> masses, std::size_t target_S);
/// Same, for D points of distinct masses.
std::vector<std::size_t> log_rank_groups(std::size_t source_D, std::size_t target_S);

/// Collapses points ranked by non-increasing mass. S >= D returns the input
/// unchanged. Throws InvalidArgument for S < 1 or an empty input.
DowngradedProfile downgrade(std::span<const RankedPoint> points, std::size_t target_S);

DowngradedProfile downgrade_profile(const SymbolProfile& profile, std::size_t target_S);
DowngradedProfile downgrade_profile(const DowngradedProfile& profile, std::size_t target_S);

} // namespace scalescope
