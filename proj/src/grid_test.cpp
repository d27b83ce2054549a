#include "scalescope/entropy.hpp"
#include "scalescope/error.hpp"
#include "scalescope/grid.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

using namespace scalescope;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(SCALESCOPE_FIXTURES) + "/grids/" + name);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Grid tones(const std::vector<int>& v, std::size_t w) {
  std::vector<std::string> cells;
  for (int x : v) cells.push_back(std::to_string(x));
  return Grid(w, v.size() / w, cells);
}

} // namespace

TEST_CASE("grid parsing") {
  const auto g = parse_grid("# comment\n3 2\nabc\n1 2 3\n");
  CHECK(g.width == 3);
  CHECK(g.height == 2);
  CHECK(g.at(2, 0) == "c");
  CHECK(g.at(0, 1) == "1");
  CHECK(g.palette().size() == 6);
  CHECK_THROWS_AS(parse_grid("3 2\nabc\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("3 x\nabc\nabc\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("2 1\nabc\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("1 1\na\nb\n"), ParseError);
  CHECK_THROWS_AS(parse_grid(""), ParseError);
}

TEST_CASE("one cell grid") {
  const Grid g(1, 1, {"x"});
  const auto r = grid_report(g, single_cell_tiling(g), "cells");
  CHECK(r.scope == 1);
  CHECK(r.diversity == 1);
  CHECK(r.entropy == 0.0);
  CHECK(r.specific_diversity == 1.0);
}

TEST_CASE("partition validation") {
  const Grid g(2, 2, {"a", "b", "a", "b"});
  GridTiling overlap{{{{0, 1}, "x"}, {{1, 2, 3}, "y"}}, {}, {}};
  CHECK_THROWS_AS(validate_partition(g, overlap), PartitionError);
  GridTiling missing{{{{0, 1}, "x"}, {{2}, "y"}}, {}, {}};
  CHECK_THROWS_AS(validate_partition(g, missing), PartitionError);
  GridTiling outside{{{{0, 1, 2, 3, 4}, "x"}}, {}, {}};
  CHECK_THROWS_AS(validate_partition(g, outside), PartitionError);
  GridTiling empty{{{{0, 1, 2, 3}, "x"}, {{}, "y"}}, {}, {}};
  CHECK_THROWS_AS(validate_partition(g, empty), PartitionError);
  CHECK_THROWS_AS(grid_profile(g, overlap), PartitionError);
  CHECK_NOTHROW(validate_partition(g, block_tiling(g, 1, 2)));
}

TEST_CASE("pattern classes by translation, optionally dihedral") {
  const Grid g(4, 2, {"1", "2", "2", "1", "3", "3", "3", "3"});
  const Region left{{0, 1}, "auto"}, right{{2, 3}, "auto"}, bottom{{4, 5}, "auto"};
  CHECK(pattern_class(g, left) == "2x1:1 2");
  CHECK(pattern_class(g, right) == "2x1:2 1");
  CHECK(pattern_class(g, left) != pattern_class(g, right));
  CHECK(pattern_class(g, left, {true}) == pattern_class(g, right, {true}));
  CHECK(pattern_class(g, bottom) == "2x1:3 3");
  const Region ell{{0, 4, 5}, "auto"};
  CHECK(pattern_class(g, ell) == "2x2:1 ./3 3");
  const Region column{{0, 4}, "auto"};
  CHECK(pattern_class(g, column) == "1x2:1/3");
  const Grid h(2, 1, {"1", "3"});
  CHECK(pattern_class(g, column, {true}) == pattern_class(h, Region{{0, 1}, "auto"}, {true}));
}

TEST_CASE("tiling parsing") {
  const Grid g = parse_grid("4 2\n1221\n3333\n");
  const auto t = parse_tiling("4 2\na a b b\nc c d d\nclasses\nc floor\nd floor\nangle 4\ncolors 3\n", g);
  REQUIRE(t.regions.size() == 4);
  CHECK(t.regions[0].label == "auto");
  CHECK(t.regions[2].label == "floor");
  CHECK(t.angular_positions == 4);
  CHECK(t.color_levels == 3);
  const auto p = grid_profile(g, t);
  CHECK(p.diversity() == 3);
  CHECK(p.scope() == 4);
  CHECK(p.entries()[0].symbol == "floor");
  CHECK(p.entries()[0].frequency == 2);

  CHECK_THROWS_AS(parse_tiling("4 1\na a b b\n", g), PartitionError);
  CHECK_THROWS_AS(parse_tiling("4 2\na a b b\nc c d d\nclasses\nz x\n", g), PartitionError);
  CHECK_THROWS_AS(parse_tiling("4 2\na a b b\nc c d d\nclasses\na x\na y\n", g), ParseError);
  CHECK_THROWS_AS(parse_tiling("4 2\na a b b\nc c d d\nbogus\n", g), ParseError);
  CHECK_THROWS_AS(parse_tiling("4 2\na a b b\nc c d d\na x\n", g), ParseError);
}

TEST_CASE("resolution of regular and irregular tilings") {
  const Grid g(6, 4, std::vector<std::string>(24, "0"));
  const auto cells = grid_report(g, single_cell_tiling(g));
  CHECK(cells.resolution == std::vector<std::size_t>{6, 4});
  CHECK(cells.regular);

  const auto blocks = grid_report(g, block_tiling(g, 3, 2));
  CHECK(blocks.resolution == std::vector<std::size_t>{2, 2});
  CHECK(blocks.regular);

  GridTiling uneven;
  for (std::size_t band = 0, x0 = 0; band < 2; ++band) {
    const std::size_t w = band == 0 ? 2 : 4;
    Region r;
    for (std::size_t y = 0; y < 4; ++y)
      for (std::size_t x = x0; x < x0 + w; ++x) r.cells.push_back(y * 6 + x);
    x0 += w;
    uneven.regions.push_back(r);
  }
  const auto rep = grid_report(g, uneven);
  CHECK_FALSE(rep.regular);
  CHECK(rep.resolution == std::vector<std::size_t>{2, 1});
}

TEST_CASE("uniform classes give entropy one on any grid") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + rng() % 6, per = 1 + rng() % 5;
    std::vector<std::string> cells;
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t k = 0; k < per; ++k) cells.push_back("c" + std::to_string(c));
    std::shuffle(cells.begin(), cells.end(), rng);
    const Grid g(cells.size(), 1, cells);
    REQUIRE(grid_report(g, single_cell_tiling(g)).entropy == 1.0);
  }
}

TEST_CASE("permuting cells keeps the single-cell entropy") {
  std::vector<int> v;
  for (auto [tone, n] : std::vector<std::pair<int, int>>{{1, 11}, {2, 6}, {3, 5}, {4, 3}, {5, 5}})
    for (int i = 0; i < n; ++i) v.push_back(tone);
  const double h0 = grid_report(tones(v, 6), single_cell_tiling(tones(v, 6))).entropy;
  CHECK(h0 == doctest::Approx(oracle::entropy_of_weights({11, 6, 5, 3, 5})));
  CHECK(std::abs(h0 - 0.943) <= 0.001);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::shuffle(v.begin(), v.end(), rng);
    const auto g = tones(v, 6);
    REQUIRE(grid_report(g, single_cell_tiling(g)).entropy == h0);
  }
}

TEST_CASE("bundled grids: pixels, triangles, bands") {
  const auto mosaic = parse_grid(fixture("mosaic.grid"));
  CHECK(mosaic.width == 56);
  const auto pixels = grid_report(mosaic, single_cell_tiling(mosaic), "pixels");
  CHECK(pixels.scope == 3136);
  CHECK(pixels.diversity == 4);
  CHECK(pixels.entropy == 1.0);
  CHECK(std::abs(pixels.specific_diversity - 0.001) <= 0.0005);
  CHECK(pixels.resolution == std::vector<std::size_t>{56, 56});
  CHECK(pixels.color_levels == 4);

  const auto tri = grid_report(mosaic, parse_tiling(fixture("triangles.tiling"), mosaic), "triangles");
  CHECK(tri.scope == 36);
  CHECK(tri.diversity == 4);
  CHECK(tri.entropy == 1.0);
  CHECK(std::abs(tri.specific_diversity - 0.111) <= 0.001);
  CHECK(tri.angular_positions == 4);

  const auto bands = grid_report(mosaic, parse_tiling(fixture("bands.tiling"), mosaic), "bands");
  CHECK(bands.scope == 6);
  CHECK(bands.diversity == 2);
  CHECK(bands.entropy == 1.0);
  CHECK(std::abs(bands.specific_diversity - 0.333) <= 0.001);
  CHECK_FALSE(bands.regular);
}

TEST_CASE("bundled tone grids and the brick tiling") {
  const auto a = parse_grid(fixture("tones_scattered.grid"));
  const auto b = parse_grid(fixture("tones_graded.grid"));
  CHECK(a.cells != b.cells);
  auto ra = grid_report(a, single_cell_tiling(a), "cells");
  auto rb = grid_report(b, single_cell_tiling(b), "cells");
  CHECK(std::abs(ra.entropy - 0.943) <= 0.001);
  CHECK(ra.entropy == rb.entropy);
  CHECK(ra.scope == rb.scope);
  CHECK(ra.diversity == rb.diversity);

  const auto bricks = parse_tiling(fixture("bricks.tiling"), b);
  const auto p = grid_profile(b, bricks);
  CHECK(p.scope() == 10);
  CHECK(p.diversity() == 7);
  std::vector<std::size_t> f;
  for (const auto& e : p.entries()) f.push_back(e.frequency);
  CHECK(f == std::vector<std::size_t>{2, 2, 2, 1, 1, 1, 1});
  const double h = entropy(p);
  CHECK(h == doctest::Approx(oracle::entropy_of_weights({6, 6, 6, 3, 3, 3, 3})));
  CHECK(std::abs(h - 0.970) <= 0.001);

  CHECK_THROWS_AS(parse_tiling(fixture("bricks_bad_class.tiling"), b), PartitionError);
  CHECK_THROWS_AS(parse_tiling(fixture("bricks_wrong_size.tiling"), b), PartitionError);
}
