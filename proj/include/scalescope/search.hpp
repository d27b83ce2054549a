#pragma once

#include "scalescope/message.hpp"
#include "scalescope/moves.hpp"
#include "scalescope/profile.hpp"
#include "scalescope/segmentation.hpp"
#include "scalescope/tokenize.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace scalescope {

enum class Acceptance { strict_decrease, decrease_or_equal };

std::string_view to_string(Acceptance a);
Acceptance parse_acceptance(std::string_view name);

/// Knobs of the fundamental-scale search.
struct SearchConfig {
  /// Fixed scales the descents start from; each one seeds `restarts` runs.
  std::vector<ScaleSelector> initializations{ScaleSelector{ScaleSelector::Kind::chars, 0},
                                             ScaleSelector{ScaleSelector::Kind::words, 0}};
  std::size_t max_passes = 200;
  /// Run 0 of every initialization starts from the plain tiling, later runs
  /// from a random coarsening of it.
  std::size_t restarts = 4;
  std::uint64_t rng_seed = 1;
  Acceptance acceptance = Acceptance::strict_decrease;
  /// Moves evaluated per pass; 0 visits every cut position once.
  std::size_t candidate_budget = 0;
  /// Largest boundary shift proposed by a drift.
  std::size_t max_drift = 3;
  /// Worker threads for independent runs. Results do not depend on it.
  std::size_t threads = 1;
  DelimiterPolicy delimiters{};

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

/// One accepted move of a descent.
struct TraceEntry {
  std::size_t pass = 0;
  Move move;
  double h_before = 0.0;
  double h_after = 0.0;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct SearchResult {
  Segmentation segmentation;
  SymbolProfile profile;
  double entropy = 0.0;
  /// Moves accepted by the winning run, in order.
  std::vector<TraceEntry> trace;
  std::string initialization;  ///< scale the winning run started from
  std::size_t restart = 0;     ///< index of the winning run within it
  double initial_entropy = 0.0;///< entropy of the winning run's start tiling
  std::size_t passes = 0;      ///< passes made by the winning run
  std::size_t evaluated = 0;   ///< moves evaluated over all runs
};

/// Local search over tilings by split, drift and join moves, minimising the
/// size-weighted diversity-base entropy. Deterministic for a fixed config.
SearchResult minimize_entropy(std::shared_ptr<const Message> msg, const SearchConfig& cfg = {});

/// Single descent from a given tiling. Exposed for tests and tooling.
SearchResult descend(const Segmentation& start, const SearchConfig& cfg, std::uint64_t stream);

/// Renders a trace as tab-separated lines: pass, kind, position, offset,
/// h_before, h_after.
std::string format_trace(const std::vector<TraceEntry>& trace);

inline constexpr std::size_t default_oracle_cap = 18;

struct ExhaustiveResult {
  Segmentation segmentation;
  double entropy = 0.0;
  std::size_t tilings = 0; ///< compositions enumerated
};

/// Global entropy minimum over all 2^(L_A - 1) contiguous tilings. Ties go to
/// fewer segments, then to the lexicographically smaller boundary vector.
/// Throws InvalidArgument when L_A > cap.
ExhaustiveResult exhaustive_min_entropy(std::shared_ptr<const Message> msg,
                                        std::size_t cap = default_oracle_cap);

/// Orders two candidate tilings: lower entropy, then fewer segments, then
/// smaller boundary vector. Entropies within 1e-12 count as equal.
bool better_tiling(double h_a, const Segmentation& a, double h_b, const Segmentation& b);

} // namespace scalescope
