#include "scalescope/grid.hpp"

#include "scalescope/entropy.hpp"
#include "scalescope/error.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace scalescope {
namespace {

struct Box {
  std::size_t x0 = std::numeric_limits<std::size_t>::max(), y0 = x0, x1 = 0, y1 = 0;
  [[nodiscard]] std::size_t w() const { return x1 - x0 + 1; }
  [[nodiscard]] std::size_t h() const { return y1 - y0 + 1; }
};

Box bounding_box(const Grid& grid, const Region& r) {
  Box b;
  for (std::size_t c : r.cells) {
    const std::size_t x = c % grid.width, y = c / grid.width;
    b.x0 = std::min(b.x0, x);
    b.y0 = std::min(b.y0, y);
    b.x1 = std::max(b.x1, x);
    b.y1 = std::max(b.y1, y);
  }
  return b;
}

// Pattern as a w x h matrix of values, "." outside the region.
using Pattern = std::vector<std::vector<std::string>>;

std::string encode(const Pattern& p) {
  std::string out = std::to_string(p.empty() ? 0 : p[0].size()) + "x" + std::to_string(p.size()) + ":";
  for (std::size_t y = 0; y < p.size(); ++y) {
    if (y) out += '/';
    for (std::size_t x = 0; x < p[y].size(); ++x) {
      if (x) out += ' ';
      out += p[y][x];
    }
  }
  return out;
}

Pattern rotate(const Pattern& p) {
  const std::size_t h = p.size(), w = p[0].size();
  Pattern r(w, std::vector<std::string>(h));
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) r[x][h - 1 - y] = p[y][x];
  return r;
}

Pattern mirror(Pattern p) {
  for (auto& row : p) std::reverse(row.begin(), row.end());
  return p;
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::size_t parse_count(const std::string& tok, const char* what) {
  std::size_t v = 0;
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || end != tok.data() + tok.size()) {
    throw ParseError(std::string("expected a count for ") + what + ", got '" + tok + "'");
  }
  return v;
}

// Lines that are neither blank nor comments.
std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(line);
  }
  return out;
}

std::pair<std::size_t, std::size_t> parse_header(const std::vector<std::string>& lines) {
  if (lines.empty()) throw ParseError("missing 'W H' header");
  const auto head = split_ws(lines[0]);
  if (head.size() != 2) throw ParseError("header must be 'W H'");
  const std::size_t w = parse_count(head[0], "width");
  const std::size_t h = parse_count(head[1], "height");
  if (w == 0 || h == 0) throw ParseError("grid dimensions must be positive");
  return {w, h};
}

std::vector<std::string> parse_rows(const std::vector<std::string>& lines, std::size_t w,
                                    std::size_t h) {
  if (lines.size() < h + 1) throw ParseError("expected " + std::to_string(h) + " rows");
  std::vector<std::string> cells;
  cells.reserve(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    auto toks = split_ws(lines[y + 1]);
    if (toks.size() == 1 && w > 1 && toks[0].size() == w) {
      const std::string row = toks[0];
      toks.clear();
      for (char c : row) toks.emplace_back(1, c);
    }
    if (toks.size() != w) {
      throw ParseError("row " + std::to_string(y + 1) + " has " + std::to_string(toks.size()) +
                       " values, expected " + std::to_string(w));
    }
    for (auto& t : toks) cells.push_back(std::move(t));
  }
  return cells;
}

} // namespace

Grid::Grid(std::size_t w, std::size_t h, std::vector<std::string> values)
    : width(w), height(h), cells(std::move(values)) {
  if (w == 0 || h == 0) throw InvalidArgument("grid dimensions must be positive");
  if (cells.size() != w * h) throw InvalidArgument("cell count does not match width * height");
}

std::vector<std::string> Grid::palette() const {
  std::set<std::string> s(cells.begin(), cells.end());
  return {s.begin(), s.end()};
}

void validate_partition(const Grid& grid, const GridTiling& tiling) {
  std::vector<int> owner(grid.cell_count(), -1);
  for (std::size_t r = 0; r < tiling.regions.size(); ++r) {
    const auto& region = tiling.regions[r];
    if (region.cells.empty()) throw PartitionError("region " + std::to_string(r) + " is empty");
    for (std::size_t c : region.cells) {
      if (c >= owner.size()) {
        throw PartitionError("region " + std::to_string(r) + " names cell " + std::to_string(c) +
                             " outside the grid");
      }
      if (owner[c] != -1) {
        throw PartitionError("cell " + std::to_string(c) + " belongs to regions " +
                             std::to_string(owner[c]) + " and " + std::to_string(r));
      }
      owner[c] = static_cast<int>(r);
    }
  }
  const auto missing = std::find(owner.begin(), owner.end(), -1);
  if (missing != owner.end()) {
    throw PartitionError("cell " + std::to_string(missing - owner.begin()) +
                         " belongs to no region");
  }
}

GridTiling single_cell_tiling(const Grid& grid) {
  GridTiling t;
  t.regions.reserve(grid.cell_count());
  for (std::size_t c = 0; c < grid.cell_count(); ++c) t.regions.push_back({{c}, grid.cells[c]});
  return t;
}

GridTiling block_tiling(const Grid& grid, std::size_t block_w, std::size_t block_h) {
  if (block_w == 0 || block_h == 0 || grid.width % block_w != 0 || grid.height % block_h != 0) {
    throw InvalidArgument("block size must divide the grid");
  }
  GridTiling t;
  for (std::size_t by = 0; by < grid.height; by += block_h) {
    for (std::size_t bx = 0; bx < grid.width; bx += block_w) {
      Region r;
      for (std::size_t y = by; y < by + block_h; ++y)
        for (std::size_t x = bx; x < bx + block_w; ++x) r.cells.push_back(y * grid.width + x);
      t.regions.push_back(std::move(r));
    }
  }
  return t;
}

std::string pattern_class(const Grid& grid, const Region& region, const ClassOptions& opts) {
  if (region.cells.empty()) throw PartitionError("empty region");
  const Box b = bounding_box(grid, region);
  Pattern p(b.h(), std::vector<std::string>(b.w(), "."));
  for (std::size_t c : region.cells) {
    p[c / grid.width - b.y0][c % grid.width - b.x0] = grid.cells[c];
  }
  std::string best = encode(p);
  if (opts.dihedral) {
    Pattern q = p;
    for (int i = 0; i < 4; ++i) {
      best = std::min({best, encode(q), encode(mirror(q))});
      q = rotate(q);
    }
  }
  return best;
}

SymbolProfile grid_profile(const Grid& grid, const GridTiling& tiling, const ClassOptions& opts) {
  validate_partition(grid, tiling);
  std::vector<SymbolEntry> entries;
  entries.reserve(tiling.regions.size());
  for (const auto& r : tiling.regions) {
    SymbolEntry e;
    e.symbol = r.label == auto_class ? pattern_class(grid, r, opts) : r.label;
    e.frequency = 1;
    e.size = r.cells.size();
    e.weight = r.cells.size();
    entries.push_back(std::move(e));
  }
  return SymbolProfile::from_entries(std::move(entries), grid.cell_count(), tiling.regions.size());
}

ScaleReport grid_report(const Grid& grid, const GridTiling& tiling, std::string scale_name,
                        const ClassOptions& opts) {
  const auto profile = grid_profile(grid, tiling, opts);

  std::vector<std::size_t> resolution{grid.width, grid.height};
  bool regular = true;
  const bool single = std::all_of(tiling.regions.begin(), tiling.regions.end(),
                                  [](const Region& r) { return r.cells.size() == 1; });
  if (!single) {
    std::set<std::size_t> xs, ys;
    std::optional<std::pair<std::size_t, std::size_t>> block;
    for (const auto& r : tiling.regions) {
      const Box b = bounding_box(grid, r);
      xs.insert(b.x0);
      ys.insert(b.y0);
      const bool rect = r.cells.size() == b.w() * b.h();
      const bool aligned = b.x0 % b.w() == 0 && b.y0 % b.h() == 0;
      if (!block) block = {b.w(), b.h()};
      if (!rect || !aligned || *block != std::pair{b.w(), b.h()}) regular = false;
    }
    if (regular && grid.width % block->first == 0 && grid.height % block->second == 0) {
      resolution = {grid.width / block->first, grid.height / block->second};
    } else {
      regular = false;
      resolution = {xs.size(), ys.size()};
    }
  }

  auto report = report_from_profile(profile, std::move(scale_name), resolution);
  report.regular = regular;
  report.angular_positions = tiling.angular_positions;
  report.color_levels = tiling.color_levels ? tiling.color_levels : grid.palette().size();
  return report;
}

Grid parse_grid(std::string_view text) {
  const auto lines = content_lines(text);
  const auto [w, h] = parse_header(lines);
  auto cells = parse_rows(lines, w, h);
  if (lines.size() > h + 1) throw ParseError("trailing content after the grid rows");
  return Grid(w, h, std::move(cells));
}

GridTiling parse_tiling(std::string_view text, const Grid& grid) {
  const auto lines = content_lines(text);
  const auto [w, h] = parse_header(lines);
  if (w != grid.width || h != grid.height) {
    throw PartitionError("tiling is " + std::to_string(w) + "x" + std::to_string(h) +
                         " but the grid is " + std::to_string(grid.width) + "x" +
                         std::to_string(grid.height));
  }
  const auto ids = parse_rows(lines, w, h);

  // Regions in order of first appearance.
  std::map<std::string, std::size_t> index;
  GridTiling t;
  for (std::size_t c = 0; c < ids.size(); ++c) {
    auto [it, inserted] = index.try_emplace(ids[c], t.regions.size());
    if (inserted) t.regions.emplace_back();
    t.regions[it->second].cells.push_back(c);
  }

  bool in_classes = false;
  std::set<std::string> labelled;
  for (std::size_t i = h + 1; i < lines.size(); ++i) {
    const auto toks = split_ws(lines[i]);
    if (toks[0] == "classes") {
      if (toks.size() > 2 || (toks.size() == 2 && toks[1] != auto_class)) {
        throw ParseError("expected 'classes' or 'classes auto'");
      }
      in_classes = toks.size() == 1;
      continue;
    }
    if (toks[0] == "angle" || toks[0] == "colors") {
      if (toks.size() != 2) throw ParseError("expected '" + toks[0] + " N'");
      const std::size_t v = parse_count(toks[1], toks[0].c_str());
      (toks[0] == "angle" ? t.angular_positions : t.color_levels) = v;
      in_classes = false;
      continue;
    }
    if (!in_classes || toks.size() != 2) {
      throw ParseError("unexpected line '" + lines[i] + "'");
    }
    const auto it = index.find(toks[0]);
    if (it == index.end()) {
      throw PartitionError("class given for region '" + toks[0] + "', which covers no cells");
    }
    if (!labelled.insert(toks[0]).second) {
      throw ParseError("region '" + toks[0] + "' has two classes");
    }
    t.regions[it->second].label = toks[1];
  }
  validate_partition(grid, t);
  return t;
}

} // namespace scalescope
