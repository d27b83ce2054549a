#pragma once

#include "scalescope/profile.hpp"

#include <cstddef>
#include <span>

namespace scalescope {

/// Tolerance on sum(P) == 1 accepted by the entropy functions.
inline constexpr double probability_sum_tolerance = 1e-9;

/// Diversity-base entropy h = -sum P_j log_D P_j, with D the number of
/// distinct symbols. A single-symbol profile has h = 0. Result is in [0, 1].
double entropy(const SymbolProfile& profile);

/// h = -sum f_i log_n f_i over relative frequencies, n = frequencies.size().
double entropy_flat(std::span<const double> frequencies);

/// d = D / L.
double specific_diversity(std::size_t diversity, std::size_t scope);

} // namespace scalescope
