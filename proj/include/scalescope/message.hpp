#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace scalescope {

/// How raw input is cut into alphabet units.
enum class UnitMode {
  text,  ///< UTF-8 code points; invalid bytes become one unit each
  bytes, ///< one unit per byte
  bits,  ///< one unit per bit, alphabet {0, 1}
};

std::string_view to_string(UnitMode mode);
UnitMode parse_unit_mode(std::string_view name);

/// Alphabet unit identifier. In text mode this is the code point itself;
/// invalid UTF-8 bytes map above the Unicode range.
using Unit = char32_t;
using UnitString = std::u32string;
using UnitView = std::u32string_view;

/// An immutable ordered sequence of alphabet units.
class Message {
public:
  static Message from_text(std::string_view utf8);
  static Message from_bytes(std::string_view bytes);
  /// Expands every byte into eight bit units, most significant first.
  static Message bits_of(std::string_view bytes);

  Message(UnitMode mode, UnitString units);

  [[nodiscard]] UnitMode mode() const noexcept { return mode_; }
  [[nodiscard]] const UnitString& units() const noexcept { return units_; }
  [[nodiscard]] std::size_t length() const noexcept { return units_.size(); }
  [[nodiscard]] bool empty() const noexcept { return units_.empty(); }

  /// Units in [first, first + count).
  [[nodiscard]] UnitView slice(std::size_t first, std::size_t count) const;

  /// Renders a run of units back to the bytes it was read from.
  [[nodiscard]] std::string render(UnitView run) const;
  /// The original byte content (bits are packed back into bytes).
  [[nodiscard]] std::string to_bytes() const;

  friend bool operator==(const Message&, const Message&) = default;

private:
  UnitMode mode_;
  UnitString units_;
};

/// Renders a run of units of the given mode as bytes.
std::string render_units(UnitMode mode, UnitView run);

/// True when `bytes` is well-formed UTF-8.
bool is_valid_utf8(std::string_view bytes) noexcept;

} // namespace scalescope
