#include "svagen/ast_json.hpp"

namespace svagen {

namespace {

bool has_bounds(Kind k) {
  switch (k) {
    case Kind::SysFunc:
    case Kind::Delay:
    case Kind::DelayRange:
    case Kind::RepeatConsec:
    case Kind::RepeatRange:
    case Kind::RepeatGoto:
    case Kind::RepeatNonConsec:
    case Kind::SeqConcat: return true;
    default: return false;
  }
}

}  // namespace

nlohmann::ordered_json ast_to_json(const AstNode& n) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(n.kind);
  if (!n.name.empty()) j["name"] = n.name;
  if (!n.arg.empty()) j["arg"] = n.arg;
  if (has_bounds(n.kind)) {
    j["lower"] = n.lower;
    if (n.upper == kUnbounded) {
      j["upper"] = "$";
    } else {
      j["upper"] = n.upper;
    }
  }
  if (!n.children.empty()) {
    auto kids = nlohmann::ordered_json::array();
    for (const auto& c : n.children) kids.push_back(ast_to_json(c));
    j["children"] = kids;
  }
  return j;
}

nlohmann::ordered_json unit_to_json(const AssertionUnit& u) {
  nlohmann::ordered_json j;
  j["clock"] = {{"edge", edge_name(u.clock.edge)}, {"signal", u.clock.signal}};
  if (u.has_disable()) j["disable"] = ast_to_json(u.disable_expr());
  j["body"] = ast_to_json(u.body);
  return j;
}

nlohmann::ordered_json profile_to_json(const AnalysisProfile& p) {
  nlohmann::ordered_json j;
  j["clock"] = {{"edge", edge_name(p.clock.edge)}, {"signal", p.clock.signal}};
  j["disable_signals"] = p.disable_signals;
  j["signals"] = p.signals;
  j["local_vars"] = p.local_vars;
  j["sysfuncs"] = p.sysfuncs;
  nlohmann::ordered_json ops = nlohmann::ordered_json::object();
  for (const auto& [k, n] : p.op_counts) ops[std::string(kind_name(k))] = n;
  j["op_counts"] = ops;
  j["depth"] = p.depth;
  j["tier"] = tier_name(p.tier);
  j["category"] = p.category;
  return j;
}

}  // namespace svagen
