#pragma once

#include <string>

#include "svagen/ast.hpp"

namespace svagen {

/// Canonical text of an expression: single spaces around binary operators and
/// parentheses only where precedence requires them.
std::string print_expr(const AstNode& node);

/// Canonical text of a whole unit: clock, optional disable, body.
std::string normalize(const AssertionUnit& unit);

}  // namespace svagen
