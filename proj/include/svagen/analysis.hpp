#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "svagen/ast.hpp"

namespace svagen {

enum class Tier { D1 = 1, D2 = 2, D3 = 3, D4 = 4 };

Tier tier_for_depth(int depth);
std::string_view tier_name(Tier t);
/// Accepts "D1".."D4"; throws std::invalid_argument otherwise.
Tier parse_tier(std::string_view name);

/// Signals and structure extracted from one unit.
struct AnalysisProfile {
  Clock clock;
  std::set<std::string> disable_signals;
  std::set<std::string> signals;
  std::set<std::string> local_vars;
  std::set<std::string> sysfuncs;
  std::map<Kind, int> op_counts;
  int depth = 1;
  Tier tier = Tier::D1;
  std::string category;

  bool operator==(const AnalysisProfile&) const = default;
};

/// Construct families in their fixed label order.
inline constexpr std::string_view kCategoryFamilies[] = {
    "impl_ov", "impl_nov", "delay",  "rep_consec", "rep_goto", "rep_nonconsec",
    "sampling", "prop_logic", "until", "within",     "local_var",
};

AnalysisProfile analyze(const AssertionUnit& unit);

/// Family label for one node kind, or empty for plain boolean operators and atoms.
std::string_view family_of(Kind k);

}  // namespace svagen
