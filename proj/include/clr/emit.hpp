#pragma once

#include "clr/cover.hpp"
#include "clr/oracle.hpp"
#include "clr/report.hpp"
#include "clr/strip.hpp"

#include <json.hpp>

#include <string>

namespace clr {

nlohmann::json to_json(const TermSeries& s);
nlohmann::json to_json(const ConstantSet& c);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const OracleResult& r);
nlohmann::json to_json(const TransverseSpectrum& s);
nlohmann::json to_json(const CoverReport& c);

/// Compact deterministic text: sorted keys, every real as %.17g, two-space indent.
std::string dump_json(const nlohmann::json& j);

/// Aligned plain-text rendering of a bound report.
std::string text_table(const BoundReport& r);

/// One bar per term of every series, on a shared log-free linear axis.
std::string svg_term_chart(const BoundReport& r);

/// Number of negative transverse eigenvalues over an (alpha, beta) grid.
std::string svg_region_map(double a, double lo, double hi, int steps);

}  // namespace clr
