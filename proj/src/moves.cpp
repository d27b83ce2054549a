#include "scalescope/moves.hpp"

#include "scalescope/error.hpp"

#include <string>

namespace scalescope {

std::string_view to_string(MoveKind kind) {
  switch (kind) {
  case MoveKind::split: return "split";
  case MoveKind::drift: return "drift";
  case MoveKind::join: return "join";
  }
  return "?";
}

bool is_valid_move(const Segmentation& seg, const Move& m) noexcept {
  if (m.position >= seg.size()) return false;
  const auto size = static_cast<std::ptrdiff_t>(seg.segment_size(m.position));
  switch (m.kind) {
  case MoveKind::split: return m.offset >= 1 && m.offset <= size - 1;
  case MoveKind::join: return m.position + 1 < seg.size();
  case MoveKind::drift: {
    if (m.position + 1 >= seg.size() || m.offset == 0) return false;
    const auto next = static_cast<std::ptrdiff_t>(seg.segment_size(m.position + 1));
    return size + m.offset >= 1 && next - m.offset >= 1;
  }
  }
  return false;
}

Segmentation apply_move(const Segmentation& seg, const Move& m) {
  if (!is_valid_move(seg, m)) {
    throw InvalidMove(std::string(to_string(m.kind)) + " at segment " +
                      std::to_string(m.position) + " with offset " + std::to_string(m.offset) +
                      " does not fit a tiling of " + std::to_string(seg.size()) + " segments");
  }
  auto b = seg.boundaries();
  const auto cut = b.begin() + static_cast<std::ptrdiff_t>(m.position) + 1;
  switch (m.kind) {
  case MoveKind::split:
    b.insert(cut, b[m.position] + static_cast<std::size_t>(m.offset));
    break;
  case MoveKind::drift:
    *cut = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(*cut) + m.offset);
    break;
  case MoveKind::join: b.erase(cut); break;
  }
  return Segmentation(seg.message_ptr(), std::move(b));
}

DeltaInterval diversity_delta_bounds(MoveKind kind) noexcept {
  switch (kind) {
  case MoveKind::split: return {-1, 2};
  case MoveKind::drift: return {-2, 2};
  case MoveKind::join: return {-2, 1};
  }
  return {};
}

} // namespace scalescope
