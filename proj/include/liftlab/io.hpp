#pragma once

#include <string>

#include "json.hpp"
#include "liftlab/analysis.hpp"
#include "liftlab/bz.hpp"
#include "liftlab/lifted.hpp"

namespace liftlab {

using Json = nlohmann::json;

// Instance schema: {"n": int, "rows": [{"coeffs": ["p/q",...], "rel": "<=",
// "rhs": "p/q"}, ...], "name": str}; rationals as exact p/q strings.
Json instance_to_json(const HPolytope& p);
HPolytope instance_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json rank_report_to_json(const RankReport& r);
Json gap_report_to_json(const GapReport& r);
Json sizes_to_json(const BZSizes& s);
Json dominance_report_to_json(const DominanceReport& r);

std::string gap_table_csv(const std::vector<GapReport>& rows);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace liftlab
