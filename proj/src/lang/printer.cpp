#include "svagen/printer.hpp"

namespace svagen {
namespace {

constexpr int kNoFollow = -1;

std::string bound(int v) { return v == kUnbounded ? "$" : std::to_string(v); }

std::string delay_text(const AstNode& n) {
  if (n.kind == Kind::DelayRange) return "##[" + std::to_string(n.lower) + ":" + bound(n.upper) + "]";
  if (n.kind == Kind::SeqConcat) return "##1";
  return "##" + std::to_string(n.lower);
}

struct Infix {
  int prec;
  bool right_assoc;
  const char* op;
};

bool infix_of(const AstNode& n, Infix& out) {
  switch (n.kind) {
    case Kind::PropAnd: out = {1, false, "and"}; return true;
    case Kind::PropOr: out = {1, false, "or"}; return true;
    case Kind::ImplOverlap: out = {2, true, "|->"}; return true;
    case Kind::ImplNonOverlap: out = {2, true, "|=>"}; return true;
    case Kind::Until: out = {3, true, "until"}; return true;
    case Kind::Within: out = {4, false, "within"}; return true;
    case Kind::Or: out = {7, false, "||"}; return true;
    case Kind::And: out = {8, false, "&&"}; return true;
    case Kind::RelOp: out = {9, false, nullptr}; return true;
    default: return false;
  }
}

// `min_prec`: the weakest operator allowed unparenthesized here.
// `follow`: precedence of the operator printed right after this text (kNoFollow if none);
// prefix operators absorb any following operator at or above their operand level.
std::string print(const AstNode& n, int min_prec, int follow) {
  Infix in{};
  if (infix_of(n, in)) {
    if (in.prec < min_prec) return "(" + print(n, 0, kNoFollow) + ")";
    const std::string op = in.op ? in.op : n.name;
    const int lp = in.right_assoc ? in.prec + 1 : in.prec;
    const int rp = in.right_assoc ? in.prec : in.prec + 1;
    return print(n.children[0], lp, in.prec) + " " + op + " " + print(n.children[1], rp, follow);
  }

  switch (n.kind) {
    case Kind::Atom: return n.name;
    case Kind::SysFunc:
      if (n.name == "$past" && n.lower != 1) return n.name + "(" + n.arg + ", " + std::to_string(n.lower) + ")";
      return n.name + "(" + n.arg + ")";
    case Kind::Delay:
    case Kind::DelayRange:
    case Kind::SeqConcat:
      if (n.children.size() == 1) {
        if (follow >= 6) return "(" + print(n, 0, kNoFollow) + ")";
        return delay_text(n) + " " + print(n.children[0], 6, follow);
      }
      if (5 < min_prec) return "(" + print(n, 0, kNoFollow) + ")";
      return print(n.children[0], 5, 5) + " " + delay_text(n) + " " + print(n.children[1], 6, follow);
    case Kind::RepeatConsec:
    case Kind::RepeatRange:
    case Kind::RepeatGoto:
    case Kind::RepeatNonConsec: {
      if (6 < min_prec) return "(" + print(n, 0, kNoFollow) + ")";
      std::string suffix;
      if (n.kind == Kind::RepeatConsec) suffix = "[*" + std::to_string(n.lower) + "]";
      if (n.kind == Kind::RepeatRange) suffix = "[*" + std::to_string(n.lower) + ":" + bound(n.upper) + "]";
      if (n.kind == Kind::RepeatGoto) suffix = "[->" + std::to_string(n.lower) + "]";
      if (n.kind == Kind::RepeatNonConsec) suffix = "[=" + std::to_string(n.lower) + "]";
      return print(n.children[0], 6, 6) + suffix;
    }
    case Kind::Not:
      return "!" + print(n.children[0], 10, follow);
    case Kind::PropNot:
      if (follow >= 0) return "(" + print(n, 0, kNoFollow) + ")";
      return "not " + print(n.children[0], 0, follow);
    case Kind::LocalVarDecl:
    case Kind::LocalVarAssign:
      return "(" + print(n.children[0], 0, kNoFollow) + ", " + n.name + " = " +
             print(n.children[1], 7, kNoFollow) + ")";
    default:
      return "?";
  }
}

}  // namespace

std::string print_expr(const AstNode& node) { return print(node, 0, kNoFollow); }

std::string normalize(const AssertionUnit& unit) {
  std::string out = "@(";
  out += edge_name(unit.clock.edge);
  out += " " + unit.clock.signal + ") ";
  if (unit.has_disable()) out += "disable iff (" + print_expr(unit.disable_expr()) + ") ";
  out += print_expr(unit.body);
  return out;
}

}  // namespace svagen
