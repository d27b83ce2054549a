#include "scalescope/entropy.hpp"

#include "scalescope/error.hpp"

#include <algorithm>
#include <cmath>

namespace scalescope {

double entropy_flat(std::span<const double> frequencies) {
  if (frequencies.empty()) throw InvalidArgument("entropy of an empty distribution");
  double sum = 0.0;
  for (double p : frequencies) {
    if (!(p > 0.0)) throw InvalidArgument("probabilities must be positive");
    sum += p;
  }
  if (std::abs(sum - 1.0) > probability_sum_tolerance) {
    throw InvalidArgument("probabilities do not sum to 1");
  }
  if (frequencies.size() == 1) return 0.0;
  // The uniform case is the maximum; report it exactly rather than through
  // rounded logarithms.
  if (std::all_of(frequencies.begin(), frequencies.end(),
                  [&](double p) { return p == frequencies.front(); })) {
    return 1.0;
  }

  double h = 0.0;
  for (double p : frequencies) h -= p * std::log(p);
  h /= std::log(static_cast<double>(frequencies.size()));
  return std::clamp(h, 0.0, 1.0);
}

double entropy(const SymbolProfile& profile) {
  const auto& entries = profile.entries();
  if (entries.empty()) throw InvalidArgument("entropy of an empty profile");
  if (entries.size() >= 2 &&
      std::all_of(entries.begin(), entries.end(),
                  [&](const SymbolEntry& e) { return e.weight == entries.front().weight; })) {
    return 1.0;
  }
  const auto p = profile.probabilities();
  return entropy_flat(p);
}

double specific_diversity(std::size_t diversity, std::size_t scope) {
  if (diversity < 1) throw InvalidArgument("diversity must be at least 1");
  if (diversity > scope) throw InvalidArgument("diversity exceeds scope");
  return static_cast<double>(diversity) / static_cast<double>(scope);
}

} // namespace scalescope
