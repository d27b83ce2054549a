#pragma once

#include "scalescope/segmentation.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace scalescope {

/// P = f * S / L_A: the fraction of message units covered by a symbol.
double symbol_probability(std::size_t frequency, std::size_t size, std::size_t total_units);

/// One distinct symbol of an interpretation.
struct SymbolEntry {
  std::string symbol;         ///< rendered bytes of the symbol
  std::size_t frequency = 0;  ///< occurrences f
  std::size_t size = 0;       ///< units per occurrence S
  std::size_t weight = 0;     ///< units covered; f * S unless sizes vary within the symbol
  double probability = 0.0;   ///< weight / L_A

  friend bool operator==(const SymbolEntry&, const SymbolEntry&) = default;
};

/// Ranked, size-weighted probability profile of one interpretation.
///
/// Entries are distinct, carry P > 0, and are sorted by non-increasing
/// probability with ties broken by symbol bytes. Weights are integers, so
/// sum(weight) == total_units is checked exactly.
class SymbolProfile {
public:
  /// Merges entries with identical symbols, drops zero-weight entries and ranks
  /// the result. An entry with weight 0 gets weight = frequency * size.
  static SymbolProfile from_entries(std::vector<SymbolEntry> entries, std::size_t total_units,
                                    std::size_t scope);

  [[nodiscard]] const std::vector<SymbolEntry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t total_units() const noexcept { return total_units_; }
  /// Symbol count L, repeated or not.
  [[nodiscard]] std::size_t scope() const noexcept { return scope_; }
  /// Distinct symbol count D.
  [[nodiscard]] std::size_t diversity() const noexcept { return entries_.size(); }

  [[nodiscard]] std::vector<double> probabilities() const;

  friend bool operator==(const SymbolProfile&, const SymbolProfile&) = default;

private:
  SymbolProfile() = default;

  std::vector<SymbolEntry> entries_;
  std::size_t total_units_ = 0;
  std::size_t scope_ = 0;
};

SymbolProfile profile_from_segmentation(const Segmentation& seg);

} // namespace scalescope
