#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "svagen/ast.hpp"

namespace svagen {

/// Outcome of parsing one assertion unit. Exactly one of `unit` / `diagnostics` is populated.
struct ParseResult {
  std::optional<AssertionUnit> unit;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return unit.has_value(); }
};

/// Parse a single clocked assertion unit.
///
/// Static checks run during parsing: range bounds are ordered, repetition counts are
/// positive, system-function arity is checked, and sequence/property operands used in
/// boolean positions are rejected. The first problem found is reported.
ParseResult parse(std::string_view text);

}  // namespace svagen
