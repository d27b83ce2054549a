#include "scalescope/report.hpp"

#include "scalescope/entropy.hpp"
#include "scalescope/error.hpp"

namespace scalescope {

ScaleReport report_from_profile(const SymbolProfile& profile, std::string scale_name,
                                std::vector<std::size_t> resolution) {
  ScaleReport r;
  r.scale_name = std::move(scale_name);
  r.total_units = profile.total_units();
  r.resolution = resolution.empty() ? std::vector<std::size_t>{profile.total_units()}
                                    : std::move(resolution);
  r.scope = profile.scope();
  r.diversity = profile.diversity();
  r.entropy = entropy(profile);
  r.specific_diversity = specific_diversity(r.diversity, r.scope);
  check_report(r);
  return r;
}

ScaleReport scale_report(const Segmentation& seg, std::string scale_name,
                         std::span<const double> dims) {
  auto r = report_from_profile(profile_from_segmentation(seg), std::move(scale_name));
  if (!dims.empty()) {
    if (dims.size() != r.resolution.size()) {
      throw InvalidArgument("expected one physical dimension per resolution axis");
    }
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (!(dims[i] > 0.0)) throw InvalidArgument("physical dimension must be positive");
      r.density.push_back(static_cast<double>(r.resolution[i]) / dims[i]);
    }
  }
  return r;
}

void check_report(const ScaleReport& r) {
  if (!(r.entropy >= 0.0 && r.entropy <= 1.0)) {
    throw InvariantViolation("entropy outside [0, 1]");
  }
  if (r.diversity < 1 || r.diversity > r.scope) {
    throw InvariantViolation("diversity outside [1, L]");
  }
  if (!(r.specific_diversity > 0.0 && r.specific_diversity <= 1.0)) {
    throw InvariantViolation("specific diversity outside (0, 1]");
  }
}

} // namespace scalescope
