#include "scalescope/message.hpp"

#include "scalescope/error.hpp"

#include <string>

namespace scalescope {
namespace {

constexpr Unit invalid_byte_base = 0x110000;

// Length of the well-formed UTF-8 sequence starting at `pos`, or 0.
std::size_t utf8_sequence(std::string_view s, std::size_t pos, Unit& out) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) {
    out = lead;
    return 1;
  }
  std::size_t len = 0;
  Unit cp = 0;
  Unit min = 0;
  if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
    min = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
    min = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
    min = 0x10000;
  } else {
    return 0;
  }
  if (pos + len > s.size()) return 0;
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char c = byte(pos + i);
    if ((c & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (c & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  out = cp;
  return len;
}

void append_utf8(std::string& out, Unit cp) {
  if (cp >= invalid_byte_base) {
    out.push_back(static_cast<char>(cp - invalid_byte_base));
  } else if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

} // namespace

std::string_view to_string(UnitMode mode) {
  switch (mode) {
  case UnitMode::text: return "text";
  case UnitMode::bytes: return "bytes";
  case UnitMode::bits: return "bits";
  }
  return "?";
}

UnitMode parse_unit_mode(std::string_view name) {
  if (name == "text") return UnitMode::text;
  if (name == "bytes") return UnitMode::bytes;
  if (name == "bits") return UnitMode::bits;
  throw InvalidArgument("unknown unit mode '" + std::string(name) + "'");
}

Message::Message(UnitMode mode, UnitString units) : mode_(mode), units_(std::move(units)) {
  if (mode_ == UnitMode::bytes) {
    for (Unit u : units_) {
      if (u > 0xFF) throw InvalidArgument("byte unit out of range");
    }
  } else if (mode_ == UnitMode::bits) {
    for (Unit u : units_) {
      if (u > 1) throw InvalidArgument("bit unit out of range");
    }
  }
}

Message Message::from_text(std::string_view utf8) {
  UnitString units;
  units.reserve(utf8.size());
  std::size_t pos = 0;
  while (pos < utf8.size()) {
    Unit cp = 0;
    const std::size_t len = utf8_sequence(utf8, pos, cp);
    if (len == 0) {
      units.push_back(invalid_byte_base + static_cast<unsigned char>(utf8[pos]));
      ++pos;
    } else {
      units.push_back(cp);
      pos += len;
    }
  }
  return Message(UnitMode::text, std::move(units));
}

Message Message::from_bytes(std::string_view bytes) {
  UnitString units;
  units.reserve(bytes.size());
  for (char c : bytes) units.push_back(static_cast<unsigned char>(c));
  return Message(UnitMode::bytes, std::move(units));
}

Message Message::bits_of(std::string_view bytes) {
  UnitString units;
  units.reserve(bytes.size() * 8);
  for (char c : bytes) {
    const auto b = static_cast<unsigned char>(c);
    for (int bit = 7; bit >= 0; --bit) units.push_back((b >> bit) & 1u);
  }
  return Message(UnitMode::bits, std::move(units));
}

UnitView Message::slice(std::size_t first, std::size_t count) const {
  return UnitView(units_).substr(first, count);
}

std::string Message::render(UnitView run) const { return render_units(mode_, run); }

std::string Message::to_bytes() const {
  if (mode_ != UnitMode::bits) return render(units_);
  std::string out;
  out.reserve(units_.size() / 8 + 1);
  unsigned acc = 0;
  std::size_t n = 0;
  for (Unit u : units_) {
    acc = (acc << 1) | u;
    if (++n == 8) {
      out.push_back(static_cast<char>(acc));
      acc = 0;
      n = 0;
    }
  }
  if (n != 0) out.push_back(static_cast<char>(acc << (8 - n)));
  return out;
}

std::string render_units(UnitMode mode, UnitView run) {
  std::string out;
  out.reserve(run.size());
  for (Unit u : run) {
    switch (mode) {
    case UnitMode::text: append_utf8(out, u); break;
    case UnitMode::bytes: out.push_back(static_cast<char>(u)); break;
    case UnitMode::bits: out.push_back(u ? '1' : '0'); break;
    }
  }
  return out;
}

bool is_valid_utf8(std::string_view bytes) noexcept {
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    Unit cp = 0;
    const std::size_t len = utf8_sequence(bytes, pos, cp);
    if (len == 0) return false;
    pos += len;
  }
  return true;
}

} // namespace scalescope
