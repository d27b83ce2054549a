#pragma once

#include "scalescope/message.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace scalescope {

/// An ordered tiling of a message into contiguous symbols: one interpretation.
///
/// Boundaries are strictly increasing cut positions starting at 0 and ending at
/// the message length, so segment i covers units [b_i, b_{i+1}). Every
/// constructor validates this, which makes a gap-free, overlap-free tiling the
/// class invariant.
class Segmentation {
public:
  Segmentation(std::shared_ptr<const Message> message, std::vector<std::size_t> boundaries);

  /// The single-segment tiling.
  static Segmentation whole(std::shared_ptr<const Message> message);
  /// Builds a tiling from segment sizes.
  static Segmentation from_sizes(std::shared_ptr<const Message> message,
                                 const std::vector<std::size_t>& sizes);

  [[nodiscard]] const Message& message() const noexcept { return *message_; }
  [[nodiscard]] const std::shared_ptr<const Message>& message_ptr() const noexcept {
    return message_;
  }
  [[nodiscard]] const std::vector<std::size_t>& boundaries() const noexcept {
    return boundaries_;
  }

  /// Number of segments (the scope L).
  [[nodiscard]] std::size_t size() const noexcept { return boundaries_.size() - 1; }
  [[nodiscard]] std::size_t segment_begin(std::size_t i) const { return boundaries_.at(i); }
  [[nodiscard]] std::size_t segment_size(std::size_t i) const {
    return boundaries_.at(i + 1) - boundaries_.at(i);
  }
  [[nodiscard]] UnitView segment(std::size_t i) const;
  [[nodiscard]] std::string segment_text(std::size_t i) const;
  [[nodiscard]] std::vector<std::string> segment_texts() const;

  /// Concatenation of all segments, unit for unit.
  [[nodiscard]] UnitString concatenate() const;

  friend bool operator==(const Segmentation& a, const Segmentation& b) {
    return a.boundaries_ == b.boundaries_ && *a.message_ == *b.message_;
  }

private:
  std::shared_ptr<const Message> message_;
  std::vector<std::size_t> boundaries_;
};

} // namespace scalescope
