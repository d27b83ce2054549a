#include "scalescope/json_io.hpp"

#include "scalescope/entropy.hpp"
#include "scalescope/error.hpp"
#include "scalescope/message.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace scalescope {
namespace {

constexpr char hex_digits[] = "0123456789ABCDEF";

// Length of a well-formed UTF-8 sequence at pos, or 0.
std::size_t utf8_length(std::string_view s, std::size_t pos) {
  const auto lead = static_cast<unsigned char>(s[pos]);
  std::size_t len = lead < 0x80 ? 1 : (lead & 0xE0) == 0xC0 ? 2 : (lead & 0xF0) == 0xE0 ? 3
                                    : (lead & 0xF8) == 0xF0 ? 4 : 0;
  if (len == 0 || pos + len > s.size()) return 0;
  return is_valid_utf8(s.substr(pos, len)) ? len : 0;
}

const Json& member(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ParseError(std::string("missing key '") + key + "'");
  }
  return doc.at(key);
}

template <typename T>
T get(const Json& doc, const char* key) {
  try {
    return member(doc, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad value for '") + key + "': " + e.what());
  }
}

} // namespace

double round_significant(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

std::string escape_symbol(std::string_view bytes, bool keep_utf8) {
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    const auto c = static_cast<unsigned char>(bytes[i]);
    if (c == '\\') {
      out += "\\\\";
      ++i;
      continue;
    }
    if (c >= 0x20 && c < 0x7F) {
      out.push_back(static_cast<char>(c));
      ++i;
      continue;
    }
    if (c >= 0x80 && keep_utf8) {
      if (const std::size_t len = utf8_length(bytes, i); len > 0) {
        out.append(bytes.substr(i, len));
        i += len;
        continue;
      }
    }
    out += "\\x";
    out.push_back(hex_digits[c >> 4]);
    out.push_back(hex_digits[c & 0xF]);
    ++i;
  }
  return out;
}

std::string unescape_symbol(std::string_view escaped) {
  std::string out;
  out.reserve(escaped.size());
  for (std::size_t i = 0; i < escaped.size(); ++i) {
    if (escaped[i] != '\\') {
      out.push_back(escaped[i]);
      continue;
    }
    if (i + 1 < escaped.size() && escaped[i + 1] == '\\') {
      out.push_back('\\');
      ++i;
      continue;
    }
    if (i + 3 < escaped.size() && escaped[i + 1] == 'x') {
      const std::string hex(escaped.substr(i + 2, 2));
      char* end = nullptr;
      const long v = std::strtol(hex.c_str(), &end, 16);
      if (end == hex.c_str() + 2) {
        out.push_back(static_cast<char>(v));
        i += 3;
        continue;
      }
    }
    throw ParseError("bad escape in symbol '" + std::string(escaped) + "'");
  }
  return out;
}

Json profile_to_json(const SymbolProfile& profile, std::string_view scale, bool keep_utf8) {
  Json doc;
  doc["scale"] = scale;
  doc["L_units"] = profile.total_units();
  doc["scope_L"] = profile.scope();
  doc["diversity_D"] = profile.diversity();
  doc["entropy_h"] = round_significant(entropy(profile));
  doc["specific_d"] = round_significant(specific_diversity(profile.diversity(), profile.scope()));
  Json symbols = Json::array();
  for (const auto& e : profile.entries()) {
    Json s;
    s["s"] = escape_symbol(e.symbol, keep_utf8);
    s["f"] = e.frequency;
    s["size"] = e.size;
    s["p"] = round_significant(e.probability);
    symbols.push_back(std::move(s));
  }
  doc["symbols"] = std::move(symbols);
  return doc;
}

SymbolProfile profile_from_json(const Json& doc) {
  const auto total = get<std::size_t>(doc, "L_units");
  const auto scope = get<std::size_t>(doc, "scope_L");
  const Json& symbols = member(doc, "symbols");
  if (!symbols.is_array()) throw ParseError("'symbols' must be an array");
  std::vector<SymbolEntry> entries;
  entries.reserve(symbols.size());
  for (const auto& s : symbols) {
    SymbolEntry e;
    e.symbol = unescape_symbol(get<std::string>(s, "s"));
    e.frequency = get<std::size_t>(s, "f");
    e.size = get<std::size_t>(s, "size");
    const double p = get<double>(s, "p");
    // p is rounded, so recover the exact weight from it.
    e.weight = static_cast<std::size_t>(std::llround(p * static_cast<double>(total)));
    // size is weight / f rounded down when a class mixes sizes.
    if (e.frequency * e.size > e.weight || e.weight >= e.frequency * (e.size + 1)) {
      throw ParseError("symbol '" + get<std::string>(s, "s") + "': f, size and p disagree");
    }
    entries.push_back(std::move(e));
  }
  try {
    return SymbolProfile::from_entries(std::move(entries), total, scope);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("inconsistent profile: ") + e.what());
  }
}

Json report_to_json(const ScaleReport& r) {
  Json doc;
  doc["scale"] = r.scale_name;
  doc["L_units"] = r.total_units;
  doc["resolution"] = r.resolution;
  doc["regular"] = r.regular;
  if (!r.density.empty()) {
    Json d = Json::array();
    for (double v : r.density) d.push_back(round_significant(v));
    doc["density"] = std::move(d);
  }
  if (r.angular_positions) doc["R_angle"] = *r.angular_positions;
  if (r.color_levels) doc["R_color"] = *r.color_levels;
  doc["scope_L"] = r.scope;
  doc["diversity_D"] = r.diversity;
  doc["entropy_h"] = round_significant(r.entropy);
  doc["specific_d"] = round_significant(r.specific_diversity);
  return doc;
}

Json downgraded_to_json(const DowngradedProfile& profile) {
  Json doc;
  doc["source_D"] = profile.source_D;
  doc["target_S"] = profile.target_S;
  Json points = Json::array();
  for (const auto& p : profile.points) {
    Json j;
    j["rank"] = round_significant(p.rank);
    j["mass"] = round_significant(p.mass);
    points.push_back(std::move(j));
  }
  doc["points"] = std::move(points);
  return doc;
}

DowngradedProfile downgraded_from_json(const Json& doc) {
  DowngradedProfile out;
  out.source_D = get<std::size_t>(doc, "source_D");
  out.target_S = get<std::size_t>(doc, "target_S");
  const Json& points = member(doc, "points");
  if (!points.is_array() || points.empty()) throw ParseError("'points' must be a non-empty array");
  for (std::size_t i = 0; i < points.size(); ++i) {
    DowngradedPoint p;
    p.rank = get<double>(points[i], "rank");
    p.mass = get<double>(points[i], "mass");
    p.first = p.last = i + 1;
    out.points.push_back(p);
    out.rank_order.push_back(i);
  }
  return out;
}

std::string downgraded_plot_tsv(const DowngradedProfile& profile) {
  std::string out = "rank\tmass\n";
  char buf[64];
  for (const auto& p : profile.points) {
    std::snprintf(buf, sizeof buf, "%.12g\t%.12g\n", p.rank, p.mass);
    out += buf;
  }
  return out;
}

std::string format_tsv_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

} // namespace scalescope
