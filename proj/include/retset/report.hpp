#pragma once

// JSON and text renderings of index sets, recurrences and reports.  Big
// integers and rationals are written as decimal strings.

#include "retset/analyzer.hpp"

#include <json.hpp>

namespace retset {

nlohmann::json to_json(const IndexSet& S);
IndexSet index_set_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Lrs& u);
Lrs lrs_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PointRep& v);
nlohmann::json to_json(const CertStatus& s);
nlohmann::json to_json(const OrbitClassification& c);
nlohmann::json to_json(const StructureReport& r);

std::string to_text(const StructureReport& r);

}  // namespace retset
