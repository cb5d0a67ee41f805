#include <doctest.h>

#include "../support/fixtures.hpp"
#include "svagen/printer.hpp"
#include "svagen/syntax_gate.hpp"

using namespace svagen;

TEST_CASE("check_syntax pass and fail") {
  auto ok = check_syntax("@(posedge clk) a |-> ##1 b");
  REQUIRE(ok.passed());
  CHECK(ok.diagnostics.empty());

  auto twice = check_syntax("@(posedge clk) a |-> |=> b");
  REQUIRE_FALSE(twice.passed());
  CHECK(twice.diagnostics.front().token == "|=>");

  auto bounds = check_syntax("@(posedge clk) a ##[3:1] b");
  REQUIRE_FALSE(bounds.passed());
  CHECK(bounds.diagnostics.front().message == "lower bound exceeds upper bound");
}

TEST_CASE("passing units re-normalize identically") {
  for (const auto& text : fixtures::kWellFormed) {
    auto v = check_syntax(text);
    REQUIRE(v.passed());
    auto again = check_syntax(normalize(*v.unit));
    REQUIRE(again.passed());
    CHECK(normalize(*again.unit) == normalize(*v.unit));
  }
}

TEST_CASE("classify_error on direct diagnostics") {
  CHECK(classify_error({Diagnostic{1, 1, "unexpected token", "|=>"}}) ==
        ErrorLabel::ImplicationOperatorError);
  CHECK(classify_error({Diagnostic{1, 1, "$rose expects exactly one argument", ","}}) ==
        ErrorLabel::SvaKeywordFunctionError);
  CHECK(classify_error({Diagnostic{1, 1, "width mismatch in comparison", ""}}) ==
        ErrorLabel::ConversionTypeCheckError);
  CHECK(classify_error({Diagnostic{1, 1, "expected ')'", ")"}}) == ErrorLabel::StructureError);
  CHECK(classify_error({Diagnostic{1, 1, "something odd", "?"}}) == ErrorLabel::OtherError);
  // Only the first diagnostic counts.
  CHECK(classify_error({Diagnostic{1, 1, "bad", "&&"}, Diagnostic{1, 1, "bad", "|->"}}) ==
        ErrorLabel::BooleanOperatorError);
  // Quoted identifiers do not trigger message keywords.
  CHECK(classify_error({Diagnostic{1, 1, "unexpected 'width' after end of property", "width"}}) ==
        ErrorLabel::StructureError);
  CHECK_THROWS_AS(classify_error({}), std::invalid_argument);
}

TEST_CASE("malformed fixtures classify to their expected labels") {
  for (const auto& m : fixtures::kMalformed) {
    auto v = check_syntax(m.text);
    INFO(m.text);
    REQUIRE_FALSE(v.passed());
    INFO(format_diagnostic(v.diagnostics.front()));
    CHECK(label_name(classify_error(v.diagnostics)) == label_name(m.label));
    CHECK(classify_error(v.diagnostics) == classify_error(check_syntax(m.text).diagnostics));
  }
}

TEST_CASE("diagnostic json round trip") {
  Diagnostic d{2, 7, "expected ')'", ")"};
  auto j = diagnostic_to_json(d);
  CHECK(j.dump() == R"j({"line":2,"col":7,"token":")","message":"expected ')'"})j");
  CHECK(diagnostic_from_json(nlohmann::json::parse(j.dump())) == d);
  CHECK(format_diagnostic(d) == "2:7: expected ')' [)]");
  for (auto l : kAllErrorLabels) CHECK(parse_label(label_name(l)) == l);
}
