#include "scalescope/downgrade.hpp"

#include "scalescope/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scalescope {

std::vector<RankedPoint> DowngradedProfile::ranked() const {
  std::vector<RankedPoint> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back({p.rank, p.mass});
  return out;
}

namespace {

// Start of each point on the log-rank axis. A point of rank r spans
// [log r, log(r + 1)); a run of equal masses has no inner order, so its
// members share the run's span evenly.
std::vector<double> axis_starts(std::span<const double> masses) {
  const std::size_t d = masses.size();
  std::vector<double> start(d);
  for (std::size_t a = 0; a < d;) {
    std::size_t b = a + 1;
    while (b < d && masses[b] == masses[a]) ++b;
    const double lo = std::log(static_cast<double>(a) + 1.0);
    const double width = (std::log(static_cast<double>(b) + 1.0) - lo) / static_cast<double>(b - a);
    for (std::size_t i = a; i < b; ++i) start[i] = lo + width * static_cast<double>(i - a);
    a = b;
  }
  return start;
}

} // namespace

std::vector<std::size_t> log_rank_groups(std::span<const double> masses, std::size_t target_S) {
  if (target_S < 1) throw InvalidArgument("target scale must be at least 1");
  const std::size_t source_D = masses.size();
  if (source_D < 1) throw InvalidArgument("profile is empty");
  const std::size_t groups = std::min(source_D, target_S);
  if (groups == source_D) return std::vector<std::size_t>(source_D, 1);

  // Group k takes the points starting in [k - 1, k) * log(D + 1) / S,
  // nudged so that no group comes out empty.
  const auto start = axis_starts(masses);
  const double span = std::log(static_cast<double>(source_D) + 1.0);
  std::vector<std::size_t> sizes;
  sizes.reserve(groups);
  std::size_t prev = 0;
  for (std::size_t k = 1; k <= groups; ++k) {
    std::size_t cut = source_D;
    if (k < groups) {
      const double edge = span * static_cast<double>(k) / static_cast<double>(groups);
      cut = static_cast<std::size_t>(
          std::lower_bound(start.begin(), start.end(), edge - 1e-9) - start.begin());
      cut = std::clamp(cut, prev + 1, source_D - (groups - k));
    }
    sizes.push_back(cut - prev);
    prev = cut;
  }
  return sizes;
}

std::vector<std::size_t> log_rank_groups(std::size_t source_D, std::size_t target_S) {
  std::vector<double> distinct(source_D);
  for (std::size_t i = 0; i < source_D; ++i) distinct[i] = -static_cast<double>(i);
  return log_rank_groups(distinct, target_S);
}

DowngradedProfile downgrade(std::span<const RankedPoint> points, std::size_t target_S) {
  if (target_S < 1) throw InvalidArgument("target scale must be at least 1");
  if (points.empty()) throw InvalidArgument("profile is empty");

  DowngradedProfile out;
  out.source_D = points.size();
  out.target_S = target_S;
  std::vector<double> masses;
  masses.reserve(points.size());
  for (const auto& p : points) masses.push_back(p.mass);
  const auto sizes = log_rank_groups(masses, target_S);
  std::size_t at = 0;
  for (std::size_t size : sizes) {
    DowngradedPoint g;
    g.first = at + 1;
    g.last = at + size;
    double weighted = 0.0;
    for (std::size_t i = at; i < at + size; ++i) {
      g.mass += points[i].mass;
      weighted += points[i].mass * points[i].rank;
    }
    g.rank = g.mass > 0.0 ? weighted / g.mass : 0.5 * (points[at].rank + points[at + size - 1].rank);
    if (size == 1) g.rank = points[at].rank;
    out.points.push_back(g);
    at += size;
  }

  // Group sums of a sorted sequence need not stay sorted; re-rank by mass.
  std::vector<std::size_t> order(out.points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out.points[a].mass > out.points[b].mass;
  });
  std::vector<DowngradedPoint> sorted;
  sorted.reserve(order.size());
  out.rank_order.assign(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.push_back(out.points[order[i]]);
    out.rank_order[order[i]] = i;
  }
  out.points = std::move(sorted);
  return out;
}

DowngradedProfile downgrade_profile(const SymbolProfile& profile, std::size_t target_S) {
  std::vector<RankedPoint> points;
  points.reserve(profile.diversity());
  for (std::size_t i = 0; i < profile.diversity(); ++i) {
    points.push_back({static_cast<double>(i + 1), profile.entries()[i].probability});
  }
  return downgrade(points, target_S);
}

DowngradedProfile downgrade_profile(const DowngradedProfile& profile, std::size_t target_S) {
  const auto points = profile.ranked();
  auto out = downgrade(points, target_S);
  out.source_D = profile.source_D;
  return out;
}

} // namespace scalescope
