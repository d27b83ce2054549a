#pragma once

#include "scalescope/segmentation.hpp"

#include <cstddef>
#include <string_view>

namespace scalescope {

enum class MoveKind { split, drift, join };

std::string_view to_string(MoveKind kind);

/// A local change of a tiling that keeps the message intact.
///
/// - split: segment `position` is cut `offset` units after its start
///   (1 <= offset <= S - 1);
/// - drift: the boundary between segments `position` and `position + 1` moves
///   by `offset` units (non-zero, both segments keep at least one unit);
/// - join: segments `position` and `position + 1` merge; `offset` is ignored.
struct Move {
  MoveKind kind = MoveKind::split;
  std::size_t position = 0;
  std::ptrdiff_t offset = 0;

  friend bool operator==(const Move&, const Move&) = default;
};

[[nodiscard]] bool is_valid_move(const Segmentation& seg, const Move& m) noexcept;

/// Applies a move. Throws InvalidMove when the move does not fit the tiling.
Segmentation apply_move(const Segmentation& seg, const Move& m);

/// Closed interval of reachable diversity changes D' - D.
struct DeltaInterval {
  int low = 0;
  int high = 0;

  [[nodiscard]] bool contains(int v) const noexcept { return v >= low && v <= high; }
  friend bool operator==(const DeltaInterval&, const DeltaInterval&) = default;
};

/// Reachable D' - D for a single move of the given kind:
/// split [-1, +2], drift [-2, +2], join [-2, +1].
DeltaInterval diversity_delta_bounds(MoveKind kind) noexcept;

} // namespace scalescope
