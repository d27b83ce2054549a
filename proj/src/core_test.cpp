#include "scalescope/entropy.hpp"
#include "scalescope/error.hpp"
#include "scalescope/message.hpp"
#include "scalescope/profile.hpp"
#include "scalescope/report.hpp"
#include "scalescope/segmentation.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace scalescope;

namespace {

const std::string toy = " a ab abc abcd abcde abcdef abcdefg";

std::shared_ptr<const Message> text(const std::string& s) {
  return std::make_shared<const Message>(Message::from_text(s));
}

// Mixed-length tiling of the toy message with a repeated " abc".
const std::vector<std::size_t> mixed_sizes{4, 1, 4, 4, 1, 4, 2, 4, 3, 4, 2, 1, 1};

} // namespace

TEST_CASE("message units per mode") {
  const auto m = Message::from_text("añb");
  CHECK(m.length() == 3);
  CHECK(m.units()[1] == U'ñ');
  CHECK(m.to_bytes() == "añb");

  const auto b = Message::from_bytes("añb");
  CHECK(b.length() == 4);
  CHECK(b.mode() == UnitMode::bytes);

  const auto bits = Message::bits_of("A");
  CHECK(bits.length() == 8);
  CHECK(bits.render(bits.slice(0, 8)) == "01000001");
}

TEST_CASE("invalid utf-8 bytes stay distinct units and round-trip") {
  const std::string raw = std::string("a") + char(0xFF) + char(0xC3) + "b";
  CHECK_FALSE(is_valid_utf8(raw));
  const auto m = Message::from_text(raw);
  CHECK(m.length() == 4);
  CHECK(m.to_bytes() == raw);
  CHECK(m.units()[1] != m.units()[2]);
}

TEST_CASE("unit mode names") {
  CHECK(parse_unit_mode("bytes") == UnitMode::bytes);
  CHECK(to_string(UnitMode::bits) == "bits");
  CHECK_THROWS_AS(parse_unit_mode("words"), InvalidArgument);
}

TEST_CASE("segmentation completeness is enforced") {
  const auto m = text("abcd");
  CHECK_NOTHROW(Segmentation(m, {0, 1, 4}));
  CHECK_THROWS_AS(Segmentation(m, {0, 2, 2, 4}), InvalidArgument);
  CHECK_THROWS_AS(Segmentation(m, {1, 4}), InvalidArgument);
  CHECK_THROWS_AS(Segmentation(m, {0, 3}), InvalidArgument);
  CHECK_THROWS_AS(Segmentation(text(""), {0}), InvalidArgument);

  const auto seg = Segmentation::from_sizes(m, {1, 3});
  CHECK(seg.size() == 2);
  CHECK(seg.segment_text(1) == "bcd");
  CHECK(seg.concatenate() == m->units());
  CHECK(Segmentation::whole(m).size() == 1);
}

TEST_CASE("size-weighted probability") {
  CHECK(symbol_probability(5, 4, 35) == doctest::Approx(20.0 / 35));
  CHECK(symbol_probability(7, 1, 35) == doctest::Approx(0.2));
  CHECK_THROWS_AS(symbol_probability(0, 1, 35), InvalidArgument);
  CHECK_THROWS_AS(symbol_probability(1, 0, 35), InvalidArgument);
  CHECK_THROWS_AS(symbol_probability(9, 4, 35), InvalidArgument);
}

TEST_CASE("profile of the toy message at char and word scale") {
  const auto m = text(toy);
  std::vector<std::size_t> ones(35, 1);
  const auto chars = profile_from_segmentation(Segmentation::from_sizes(m, ones));
  CHECK(chars.diversity() == 8);
  CHECK(chars.scope() == 35);
  std::vector<std::size_t> freq;
  for (const auto& e : chars.entries()) freq.push_back(e.frequency);
  CHECK(freq == std::vector<std::size_t>{7, 7, 6, 5, 4, 3, 2, 1});
  CHECK(chars.entries()[0].symbol == " "); // ties rank by symbol

  const auto words = profile_from_segmentation(Segmentation::from_sizes(m, {2, 3, 4, 5, 6, 7, 8}));
  CHECK(words.diversity() == 7);
  for (const auto& e : words.entries()) CHECK(e.frequency == 1);
}

TEST_CASE("mixed tiling profile") {
  const auto p = profile_from_segmentation(Segmentation::from_sizes(text(toy), mixed_sizes));
  CHECK(p.diversity() == 8);
  CHECK(p.scope() == 13);
  std::vector<std::size_t> w;
  for (const auto& e : p.entries()) w.push_back(e.weight);
  CHECK(w == std::vector<std::size_t>{20, 4, 4, 3, 1, 1, 1, 1});
  CHECK(p.entries()[0].symbol == " abc");
  CHECK(p.entries()[0].frequency == 5);
}

TEST_CASE("profile construction rejects inconsistent input") {
  CHECK_THROWS_AS(SymbolProfile::from_entries({{"a", 1, 2, 0, 0}}, 3, 1), InvalidArgument);
  CHECK_THROWS_AS(SymbolProfile::from_entries({{"a", 1, 1, 0, 0}, {"b", 1, 1, 0, 0}}, 2, 1),
                  InvalidArgument);
  CHECK_THROWS_AS(SymbolProfile::from_entries({}, 2, 1), InvalidArgument);
  // Duplicates merge; zero-frequency symbols are dropped.
  const auto p = SymbolProfile::from_entries(
      {{"ab", 1, 2, 0, 0}, {"ab", 1, 2, 0, 0}, {"c", 1, 1, 0, 0}, {"z", 0, 3, 0, 0}}, 5, 3);
  CHECK(p.diversity() == 2);
  CHECK(p.entries()[0].frequency == 2);
}

TEST_CASE("entropy of the toy tilings") {
  const auto m = text(toy);
  std::vector<std::size_t> ones(35, 1);
  const auto chars = profile_from_segmentation(Segmentation::from_sizes(m, ones));
  CHECK(std::abs(entropy(chars) - 0.937) <= 0.001);
  CHECK(entropy(chars) == doctest::Approx(oracle::entropy_of_weights({7, 7, 6, 5, 4, 3, 2, 1})));

  const auto words = profile_from_segmentation(Segmentation::from_sizes(m, {2, 3, 4, 5, 6, 7, 8}));
  CHECK(std::abs(entropy(words) - 0.957) <= 0.001);

  const auto mixed = profile_from_segmentation(Segmentation::from_sizes(m, mixed_sizes));
  CHECK(std::abs(entropy(mixed) - 0.689) <= 0.001);

  const std::vector<double> flat_a{2.0 / 35, 3.0 / 35, 5.0 / 35, 6.0 / 35,
                               7.0 / 35, 8.0 / 35, 3.0 / 35, 1.0 / 35};
  CHECK(std::abs(entropy_flat(flat_a) - 0.926) <= 0.001);

  const std::vector<double> flat_bw{16, 2, 4, 1, 1, 3, 1, 1, 3, 3};
  std::vector<double> flat_b;
  for (double w : flat_bw) flat_b.push_back(w / 35);
  CHECK(std::abs(entropy_flat(flat_b) - 0.785) <= 0.001);
  CHECK(entropy_flat(flat_b) == doctest::Approx(oracle::entropy_of_weights(flat_bw)).epsilon(1e-12));
}

TEST_CASE("entropy edge cases") {
  const std::vector<double> one{1.0};
  CHECK(entropy_flat(one) == 0.0);
  const std::vector<double> quarters{0.25, 0.25, 0.25, 0.25};
  CHECK(entropy_flat(quarters) == 1.0);
  const std::vector<double> sevenths(7, 1.0 / 7);
  CHECK(entropy_flat(sevenths) == 1.0);
  CHECK_THROWS_AS(entropy_flat(std::vector<double>{}), InvalidArgument);
  CHECK_THROWS_AS(entropy_flat(std::vector<double>{0.5, 0.0, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(entropy_flat(std::vector<double>{0.5, 0.4}), InvalidArgument);
  CHECK_NOTHROW(entropy_flat(std::vector<double>{0.5, 0.5 + 1e-10}));
}

TEST_CASE("entropy stays in [0, 1] and matches the oracle on fuzzed profiles") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = 1 + rng() % 40;
    std::vector<SymbolEntry> entries;
    std::vector<double> weights;
    std::size_t total = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t f = 1 + rng() % 9, s = 1 + rng() % 6;
      entries.push_back({"s" + std::to_string(i), f, s, 0, 0});
      weights.push_back(static_cast<double>(f * s));
      total += f * s;
    }
    const auto p = SymbolProfile::from_entries(entries, total, 0);
    const double h = entropy(p);
    REQUIRE(h >= 0.0);
    REQUIRE(h <= 1.0);
    REQUIRE(h == doctest::Approx(oracle::entropy_of_weights(weights)).epsilon(1e-9));
    const auto probs = p.probabilities();
    REQUIRE(std::abs(h - entropy_flat(probs)) <= 1e-12);
  }
}

TEST_CASE("uniform equal-size profiles have entropy exactly one") {
  for (std::size_t d = 2; d <= 50; ++d) {
    for (std::size_t s : {1u, 3u, 7u}) {
      std::vector<SymbolEntry> entries;
      for (std::size_t i = 0; i < d; ++i) entries.push_back({std::to_string(i), 2, s, 0, 0});
      const auto p = SymbolProfile::from_entries(entries, 2 * s * d, 0);
      REQUIRE(entropy(p) == 1.0);
      REQUIRE(std::abs(entropy(p) - entropy_flat(p.probabilities())) <= 1e-12);
    }
  }
  const auto single = SymbolProfile::from_entries({{"x", 3, 2, 0, 0}}, 6, 3);
  CHECK(entropy(single) == 0.0);
}

TEST_CASE("specific diversity") {
  CHECK(specific_diversity(8, 35) == doctest::Approx(8.0 / 35));
  CHECK(specific_diversity(4, 3136) == doctest::Approx(0.00128).epsilon(0.01));
  CHECK_THROWS_AS(specific_diversity(0, 3), InvalidArgument);
  CHECK_THROWS_AS(specific_diversity(4, 3), InvalidArgument);
}

TEST_CASE("scale report of the char tiling") {
  std::vector<std::size_t> ones(35, 1);
  const std::vector<double> dims{35.0};
  const auto r = scale_report(Segmentation::from_sizes(text(toy), ones), "chars", dims);
  CHECK(r.total_units == 35);
  CHECK(r.resolution == std::vector<std::size_t>{35});
  CHECK(r.density == std::vector<double>{1.0});
  CHECK(r.scope == 35);
  CHECK(r.diversity == 8);
  CHECK(std::abs(r.entropy - 0.937) <= 0.001);
  CHECK(r.specific_diversity == doctest::Approx(8.0 / 35));
  CHECK_NOTHROW(check_report(r));

  auto bad = r;
  bad.entropy = 1.5;
  CHECK_THROWS_AS(check_report(bad), InvariantViolation);
  bad = r;
  bad.diversity = 40;
  CHECK_THROWS_AS(check_report(bad), InvariantViolation);
}
