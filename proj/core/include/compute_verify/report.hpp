#pragma once

#include <nlohmann/json.hpp>

namespace compute_verify {

/// Reports use insertion-ordered JSON so machine output is byte-stable.
using OrderedJson = nlohmann::ordered_json;

/// Rounds v to 9 significant digits (the report float format). Values pass
/// through this before entering a report tree, so emit/parse round trips
/// are exact.
double report_number(double v);

}  // namespace compute_verify
