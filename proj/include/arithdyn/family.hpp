#pragma once

#include <string>

#include "arithdyn/maps.hpp"

namespace arithdyn {

// Family file: {"n": 3, "variables": ["x","y","z"], "maps": [{"name": ...,
// "affine": [...], "inverse": [...], "dratio": {"value": "8", "provenance":
// ...}}, ...]}. Entries may give "projective" components (n+1 polynomials
// over n+1 variables) instead of "affine". Optional "claimed_regular" records
// an external joint-regularity claim for discrepancy reporting.
MapFamily family_from_json(const std::string& json_text);
MapFamily family_from_file(const std::string& path);

}  // namespace arithdyn
