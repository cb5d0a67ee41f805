#pragma once

#include <string>
#include <vector>

#include "svagen/syntax_gate.hpp"

namespace fixtures {

// Well-formed units, at least one per grammar production.
inline const std::vector<std::string> kWellFormed = {
    "@(posedge clk) a",
    "@(negedge clk) a",
    "@(posedge clk) disable iff (rst) a |-> b",
    "@(posedge clk) disable iff (rst || !en) a |=> b",
    "@(posedge clk) !a",
    "@(posedge clk) !!a",
    "@(posedge clk) a && b",
    "@(posedge clk) a || b && c",
    "@(posedge clk) (a || b) && c",
    "@(posedge clk) a == b",
    "@(posedge clk) a != b",
    "@(posedge clk) (a == b) != c",
    "@(posedge clk) !(a && b) || c",
    "@(posedge clk) $rose(a)",
    "@(posedge clk) $fell(a) |-> b",
    "@(posedge clk) $stable(a) && b",
    "@(posedge clk) $past(a)",
    "@(posedge clk) $past(a, 3) |-> b",
    "@(posedge clk) a |-> b",
    "@(posedge clk) a |=> b",
    "@(posedge clk) a |-> b |-> c",
    "@(posedge clk) a |-> ##1 b",
    "@(posedge clk) a ##1 b",
    "@(posedge clk) a ##0 b",
    "@(posedge clk) a ##2 b ##1 c",
    "@(posedge clk) ##1 a",
    "@(posedge clk) ##[1:3] a |-> b",
    "@(posedge clk) a ##[0:2] b",
    "@(posedge clk) a ##[1:$] b",
    "@(posedge clk) a[*3]",
    "@(posedge clk) a[*1:3] ##1 b",
    "@(posedge clk) a[*2:$] |-> b",
    "@(posedge clk) (a ##1 b)[*2]",
    "@(posedge clk) a[->2] |-> b",
    "@(posedge clk) req |-> ack[->1]",
    "@(posedge clk) a[=2] ##1 b",
    "@(posedge clk) start |=> done[=1]",
    "@(posedge clk) a ##1 b within c[*4]",
    "@(posedge clk) (a within b ##2 c) |-> d",
    "@(posedge clk) not a",
    "@(posedge clk) not (a |-> b)",
    "@(posedge clk) a |-> not b",
    "@(posedge clk) (a |-> b) and (c |-> d)",
    "@(posedge clk) (a |-> b) or c",
    "@(posedge clk) a and b or c",
    "@(posedge clk) a until b",
    "@(posedge clk) a |-> b until c",
    "@(posedge clk) (a until b) until c",
    "@(posedge clk) a until b until c",
    "@(posedge clk) a ##1 b |-> not (c until d)",
    "@(posedge clk) (a ##1 b) ##1 c",
    "@(posedge clk) a ##1 (b ##1 c)",
    "@(posedge clk) (##1 a) ##1 b",
    "@(posedge clk) a ##1 ##1 b",
    "@(posedge clk) (a, v = b) ##1 c",
    "@(posedge clk) (a ##1 b, v = c) ##1 (d, v = e) |-> f",
    "@(posedge clk) (a |-> b) until c",
    "@(posedge clk) not not a",
    "@(posedge clk) (not a) and b",
    "@(posedge clk) $rose(a) ##[2:4] $fell(b) |=> $stable(c)",
    "@(negedge clk2) disable iff ($past(rst)) a[*1:2] ##1 b[->1] |=> c",
    "@(posedge clk) /* block */ a // line\n |-> b",
};

struct Malformed {
  std::string text;
  svagen::ErrorLabel label;
};

inline const std::vector<Malformed> kMalformed = {
    {"@(posedge clk) a |-> |=> b", svagen::ErrorLabel::ImplicationOperatorError},
    {"@(posedge clk) a -> b", svagen::ErrorLabel::ImplicationOperatorError},
    {"@(posedge clk) a => b", svagen::ErrorLabel::ImplicationOperatorError},
    {"@(posedge clk) a |- b", svagen::ErrorLabel::ImplicationOperatorError},
    {"@(posedge clk) a ##[3:1] b", svagen::ErrorLabel::TimingOperatorError},
    {"@(posedge clk) a # 1 b", svagen::ErrorLabel::TimingOperatorError},
    {"@(posedge clk) a[*0]", svagen::ErrorLabel::TimingOperatorError},
    {"@(posedge clk) a ##", svagen::ErrorLabel::TimingOperatorError},
    {"@(posedge clk) a[+] |-> b", svagen::ErrorLabel::TimingOperatorError},
    {"@(posedge clk) a & b", svagen::ErrorLabel::BooleanOperatorError},
    {"@(posedge clk) a | b", svagen::ErrorLabel::BooleanOperatorError},
    {"@(posedge clk) a < b", svagen::ErrorLabel::BooleanOperatorError},
    {"@(posedge clk) a && |-> b", svagen::ErrorLabel::ImplicationOperatorError},
    {"@(posedge clk) ~a |-> b", svagen::ErrorLabel::BooleanOperatorError},
    {"@(posedge clk) a === b", svagen::ErrorLabel::BooleanOperatorError},
    {"@(posedge clk) $rose(a, b)", svagen::ErrorLabel::SvaKeywordFunctionError},
    {"@(posedge clk) $onehot(a)", svagen::ErrorLabel::SvaKeywordFunctionError},
    {"@(posedge clk) a throughout b", svagen::ErrorLabel::SvaKeywordFunctionError},
    {"@(posedge clk) disable (rst) a", svagen::ErrorLabel::SvaKeywordFunctionError},
    {"@(posedge clk) $past(a, 0)", svagen::ErrorLabel::SvaKeywordFunctionError},
    {"@(posedge clk) (a ##1 b) == c", svagen::ErrorLabel::ConversionTypeCheckError},
    {"@(posedge clk) 8'h1 |-> b", svagen::ErrorLabel::ConversionTypeCheckError},
    {"@(posedge clk) a |-> 1", svagen::ErrorLabel::ConversionTypeCheckError},
    {"@(posedge clk) disable iff (a ##1 b) c", svagen::ErrorLabel::ConversionTypeCheckError},
    {"a |-> b", svagen::ErrorLabel::StructureError},
    {"@(posedge clk) (a |-> b", svagen::ErrorLabel::StructureError},
    {"@(posedge clk) a b", svagen::ErrorLabel::StructureError},
    {"@(clk) a", svagen::ErrorLabel::StructureError},
    {"@(posedge clk)", svagen::ErrorLabel::StructureError},
    {"@(posedge clk) a |-> b `", svagen::ErrorLabel::OtherError},
    {"@(posedge clk) a % b", svagen::ErrorLabel::OtherError},
    {"@(posedge clk) a ##99999999 b", svagen::ErrorLabel::OtherError},
};

}  // namespace fixtures
