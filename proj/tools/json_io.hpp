#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "scx/dist.hpp"
#include "scx/matrix.hpp"

namespace scx::cli {

using Json = nlohmann::json;

// Any of the three input schemas:
//   Dist:        {"labels": [...], "weights": [...]}
//   JointDist:   {"row_labels": [...], "col_labels": [...], "matrix": [[...], ...]}
//   HermitianOp: {"dim": d, "re": [[...]], "im": [[...]]}
// Weights may be numbers or decimal strings; labels are optional.
using Input = std::variant<Dist, JointDist, HermitianOp>;

// Parses text; syntax errors are reported as "line L, column C: ...".
Json parse_json_text(const std::string& text, const std::string& source);
Input parse_input(const Json& j);
// Reads `path`, or stdin for "-".
Input load_input(const std::string& path);

Dist dist_from_json(const Json& j);
JointDist joint_from_json(const Json& j);
HermitianOp op_from_json(const Json& j);

Json to_json(const Dist& d);
Json to_json(const JointDist& j);
Json to_json(const HermitianOp& h);

}  // namespace scx::cli
