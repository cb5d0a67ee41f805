#pragma once

#include <nlohmann/json.hpp>

#include "svagen/analysis.hpp"
#include "svagen/ast.hpp"

namespace svagen {

/// {"kind", "name"?, "arg"?, "lower"?, "upper"? ("$" when unbounded), "children"?}
nlohmann::ordered_json ast_to_json(const AstNode& n);
/// {"clock": {"edge", "signal"}, "disable"?, "body"}
nlohmann::ordered_json unit_to_json(const AssertionUnit& u);
nlohmann::ordered_json profile_to_json(const AnalysisProfile& p);

}  // namespace svagen
