#include "scalescope/profile.hpp"

#include "scalescope/error.hpp"

#include <algorithm>
#include <unordered_map>

namespace scalescope {

double symbol_probability(std::size_t frequency, std::size_t size, std::size_t total_units) {
  if (frequency < 1 || size < 1) throw InvalidArgument("frequency and size must be at least 1");
  if (frequency * size > total_units) {
    throw InvalidArgument("symbol occurrences exceed the message length");
  }
  return static_cast<double>(frequency * size) / static_cast<double>(total_units);
}

SymbolProfile SymbolProfile::from_entries(std::vector<SymbolEntry> entries,
                                          std::size_t total_units, std::size_t scope) {
  if (total_units == 0) throw InvalidArgument("profile over an empty message");

  std::unordered_map<std::string, std::size_t> index;
  std::vector<SymbolEntry> merged;
  std::size_t occurrences = 0;
  for (auto& e : entries) {
    if (e.weight == 0) e.weight = e.frequency * e.size;
    if (e.weight == 0) continue;
    occurrences += e.frequency;
    auto [it, inserted] = index.try_emplace(e.symbol, merged.size());
    if (inserted) {
      merged.push_back(std::move(e));
      continue;
    }
    auto& m = merged[it->second];
    m.frequency += e.frequency;
    m.weight += e.weight;
    if (m.size != e.size) m.size = m.weight / m.frequency;
  }
  if (merged.empty()) throw InvalidArgument("profile has no symbols");

  std::size_t sum = 0;
  for (const auto& e : merged) sum += e.weight;
  if (sum != total_units) {
    throw InvalidArgument("symbol weights (" + std::to_string(sum) +
                          ") do not cover the message length (" +
                          std::to_string(total_units) + ")");
  }
  if (scope == 0) scope = occurrences;
  if (merged.size() > scope) throw InvalidArgument("diversity exceeds scope");

  for (auto& e : merged) {
    e.probability = static_cast<double>(e.weight) / static_cast<double>(total_units);
  }
  std::sort(merged.begin(), merged.end(), [](const SymbolEntry& a, const SymbolEntry& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.symbol < b.symbol;
  });

  SymbolProfile p;
  p.entries_ = std::move(merged);
  p.total_units_ = total_units;
  p.scope_ = scope;
  return p;
}

std::vector<double> SymbolProfile::probabilities() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.probability);
  return out;
}

SymbolProfile profile_from_segmentation(const Segmentation& seg) {
  std::unordered_map<UnitView, std::size_t> counts;
  for (std::size_t i = 0; i < seg.size(); ++i) ++counts[seg.segment(i)];

  std::vector<SymbolEntry> entries;
  entries.reserve(counts.size());
  for (const auto& [run, f] : counts) {
    SymbolEntry e;
    e.symbol = seg.message().render(run);
    e.frequency = f;
    e.size = run.size();
    e.weight = f * run.size();
    entries.push_back(std::move(e));
  }
  return SymbolProfile::from_entries(std::move(entries), seg.message().length(), seg.size());
}

} // namespace scalescope
