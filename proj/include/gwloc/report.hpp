#pragma once

#include "gwloc/graphs.hpp"
#include "gwloc/invariants.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace gwloc::report {

using Json = nlohmann::ordered_json;

/// {command, r, degree, type, N, N_int?, n, graph_count, weight_strategy,
///  jobs, elapsed_ms}. N and n are exact decimal strings; N_int is present
/// only when N is an integer inside int64 range.
Json to_json(const invariants::InvariantReport& report);

/// Inverse of to_json. Throws std::invalid_argument on schema mismatch.
invariants::InvariantReport from_json(const Json& json);

/// "N_2 = 4876875/8" / "n_2 = 609250" block with a header line.
std::string to_text(const invariants::InvariantReport& report);

Json catalog_json(const graphs::FixedGraph& graph);

}  // namespace gwloc::report
