#pragma once

#include "scalescope/downgrade.hpp"
#include "scalescope/profile.hpp"
#include "scalescope/report.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace scalescope {

using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits, the precision of every float in JSON output.
double round_significant(double v, int digits = 12);

/// Makes symbol bytes safe for JSON text. Backslash becomes "\\\\", control
/// bytes and bytes outside well-formed UTF-8 become "\\xHH". With
/// keep_utf8 = false every byte >= 0x80 is escaped too.
std::string escape_symbol(std::string_view bytes, bool keep_utf8 = true);
std::string unescape_symbol(std::string_view escaped);

/// Canonical profile document; key order is fixed:
/// scale, L_units, scope_L, diversity_D, entropy_h, specific_d, symbols.
Json profile_to_json(const SymbolProfile& profile, std::string_view scale, bool keep_utf8 = true);
SymbolProfile profile_from_json(const Json& doc);

Json report_to_json(const ScaleReport& report);

/// {"source_D", "target_S", "points": [{"rank", "mass"}, ...]}
Json downgraded_to_json(const DowngradedProfile& profile);
DowngradedProfile downgraded_from_json(const Json& doc);

/// "rank\tmass" lines for log-log plotting, header included.
std::string downgraded_plot_tsv(const DowngradedProfile& profile);

/// Fixed-point with six decimals, the TSV float format.
std::string format_tsv_float(double v);

} // namespace scalescope
