#pragma once

#include <json.hpp>

#include "aggar/complexfn.hpp"
#include "aggar/diagnostics.hpp"
#include "aggar/distribution.hpp"
#include "aggar/panel.hpp"

namespace aggar::io {

using nlohmann::json;

/// {"family":"beta","p":2,"q":3}, {"family":"uniform"},
/// {"family":"polynomial","c":[0,6,-6]}, {"family":"dirac","phi0":0.5},
/// {"family":"generic","density":[...]} (equispaced tabulated values).
[[nodiscard]] DistributionSpec spec_from_json(const json& j);
/// A callable generic density without a table serializes as
/// {"family":"generic","tabulated":false} and cannot be read back.
[[nodiscard]] json spec_to_json(const DistributionSpec& spec);

/// {spec, a1_limit, memory_class, method}.
[[nodiscard]] json persistence_json(const DistributionSpec& spec);
[[nodiscard]] json abel_json(const AbelResult& r);
[[nodiscard]] json memory_report_json(const MemoryReport& r);
[[nodiscard]] json study_json(const StudyReport& r);

}  // namespace aggar::io
