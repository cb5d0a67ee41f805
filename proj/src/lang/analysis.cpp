#include "svagen/analysis.hpp"

#include <stdexcept>

namespace svagen {

Tier tier_for_depth(int d) {
  if (d <= 1) return Tier::D1;
  if (d == 2) return Tier::D2;
  if (d == 3) return Tier::D3;
  return Tier::D4;
}

std::string_view tier_name(Tier t) {
  switch (t) {
    case Tier::D1: return "D1";
    case Tier::D2: return "D2";
    case Tier::D3: return "D3";
    case Tier::D4: return "D4";
  }
  return "?";
}

Tier parse_tier(std::string_view name) {
  if (name == "D1") return Tier::D1;
  if (name == "D2") return Tier::D2;
  if (name == "D3") return Tier::D3;
  if (name == "D4") return Tier::D4;
  throw std::invalid_argument("unknown tier '" + std::string(name) + "'");
}

std::string_view family_of(Kind k) {
  switch (k) {
    case Kind::ImplOverlap: return "impl_ov";
    case Kind::ImplNonOverlap: return "impl_nov";
    case Kind::Delay:
    case Kind::DelayRange:
    case Kind::SeqConcat: return "delay";
    case Kind::RepeatConsec:
    case Kind::RepeatRange: return "rep_consec";
    case Kind::RepeatGoto: return "rep_goto";
    case Kind::RepeatNonConsec: return "rep_nonconsec";
    case Kind::SysFunc: return "sampling";
    case Kind::PropNot:
    case Kind::PropAnd:
    case Kind::PropOr: return "prop_logic";
    case Kind::Until: return "until";
    case Kind::Within: return "within";
    case Kind::LocalVarDecl:
    case Kind::LocalVarAssign: return "local_var";
    default: return {};
  }
}

namespace {

void collect_identifiers(const AstNode& n, std::set<std::string>& out) {
  visit(n, [&](const AstNode& x) {
    if (x.kind == Kind::Atom) out.insert(x.name);
    if (x.kind == Kind::SysFunc) out.insert(x.arg);
  });
}

}  // namespace

AnalysisProfile analyze(const AssertionUnit& unit) {
  AnalysisProfile p;
  p.clock = unit.clock;

  visit(unit.body, [&](const AstNode& x) {
    ++p.op_counts[x.kind];
    if (x.kind == Kind::SysFunc) p.sysfuncs.insert(x.name);
    if (is_local_var_kind(x.kind)) p.local_vars.insert(x.name);
  });

  // Each identifier lands in exactly one bucket: clock, then disable, then locals, then signals.
  std::set<std::string> disable_ids;
  if (unit.has_disable()) collect_identifiers(unit.disable_expr(), disable_ids);
  for (const auto& id : disable_ids) {
    if (id != unit.clock.signal) p.disable_signals.insert(id);
  }
  std::set<std::string> body_ids;
  collect_identifiers(unit.body, body_ids);
  for (const auto& id : body_ids) {
    if (id == unit.clock.signal || p.disable_signals.count(id) || p.local_vars.count(id)) continue;
    p.signals.insert(id);
  }

  p.depth = depth(unit.body);
  p.tier = tier_for_depth(p.depth);

  std::set<std::string_view> present;
  for (const auto& [kind, count] : p.op_counts) {
    auto fam = family_of(kind);
    if (!fam.empty()) present.insert(fam);
  }
  for (auto fam : kCategoryFamilies) {
    if (!present.count(fam)) continue;
    if (!p.category.empty()) p.category += "|";
    p.category += fam;
  }
  if (p.category.empty()) p.category = "bool";
  return p;
}

}  // namespace svagen
