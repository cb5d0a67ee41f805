#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "svagen/ast.hpp"

namespace svagen {

/// Syntax-failure attribution labels.
enum class ErrorLabel {
  StructureError,
  ImplicationOperatorError,
  TimingOperatorError,
  BooleanOperatorError,
  SvaKeywordFunctionError,
  ConversionTypeCheckError,
  OtherError,
};

inline constexpr std::array<ErrorLabel, 7> kAllErrorLabels = {
    ErrorLabel::StructureError,          ErrorLabel::ImplicationOperatorError,
    ErrorLabel::TimingOperatorError,     ErrorLabel::BooleanOperatorError,
    ErrorLabel::SvaKeywordFunctionError, ErrorLabel::ConversionTypeCheckError,
    ErrorLabel::OtherError,
};

std::string_view label_name(ErrorLabel l);
std::optional<ErrorLabel> parse_label(std::string_view name);

struct SyntaxVerdict {
  std::optional<AssertionUnit> unit;  // set on Pass
  std::vector<Diagnostic> diagnostics;  // non-empty on Fail

  bool passed() const { return unit.has_value(); }
};

/// The SPR gate: parse plus static checks.
SyntaxVerdict check_syntax(std::string_view text);

/// Assign one label to a failed sample from its first diagnostic.
/// Throws std::invalid_argument on an empty list.
ErrorLabel classify_error(const std::vector<Diagnostic>& diags);

nlohmann::ordered_json diagnostic_to_json(const Diagnostic& d);
Diagnostic diagnostic_from_json(const nlohmann::json& j);

/// "line:col: message [token]", the form fed back to the generator.
std::string format_diagnostic(const Diagnostic& d);

}  // namespace svagen
