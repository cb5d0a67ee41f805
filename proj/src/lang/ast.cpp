#include "svagen/ast.hpp"

#include <algorithm>

namespace svagen {

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Atom: return "Atom";
    case Kind::Not: return "Not";
    case Kind::And: return "And";
    case Kind::Or: return "Or";
    case Kind::RelOp: return "RelOp";
    case Kind::SysFunc: return "SysFunc";
    case Kind::Delay: return "Delay";
    case Kind::DelayRange: return "DelayRange";
    case Kind::RepeatConsec: return "RepeatConsec";
    case Kind::RepeatRange: return "RepeatRange";
    case Kind::RepeatGoto: return "RepeatGoto";
    case Kind::RepeatNonConsec: return "RepeatNonConsec";
    case Kind::SeqConcat: return "SeqConcat";
    case Kind::ImplOverlap: return "ImplOverlap";
    case Kind::ImplNonOverlap: return "ImplNonOverlap";
    case Kind::PropNot: return "PropNot";
    case Kind::PropAnd: return "PropAnd";
    case Kind::PropOr: return "PropOr";
    case Kind::Until: return "Until";
    case Kind::Within: return "Within";
    case Kind::LocalVarDecl: return "LocalVarDecl";
    case Kind::LocalVarAssign: return "LocalVarAssign";
  }
  return "?";
}

std::string_view edge_name(Edge e) { return e == Edge::Posedge ? "posedge" : "negedge"; }

AstNode AstNode::atom(std::string id) {
  AstNode n;
  n.kind = Kind::Atom;
  n.name = std::move(id);
  return n;
}

AstNode AstNode::unary(Kind k, AstNode child) {
  AstNode n;
  n.kind = k;
  n.children.push_back(std::move(child));
  return n;
}

AstNode AstNode::binary(Kind k, AstNode lhs, AstNode rhs) {
  AstNode n;
  n.kind = k;
  n.children.push_back(std::move(lhs));
  n.children.push_back(std::move(rhs));
  return n;
}

int depth(const AstNode& node) {
  int deepest = 0;
  for (const auto& c : node.children) deepest = std::max(deepest, depth(c));
  return deepest + 1;
}

bool is_boolean_kind(Kind k) {
  switch (k) {
    case Kind::Atom:
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::RelOp:
    case Kind::SysFunc: return true;
    default: return false;
  }
}

bool is_local_var_kind(Kind k) { return k == Kind::LocalVarDecl || k == Kind::LocalVarAssign; }

}  // namespace svagen
