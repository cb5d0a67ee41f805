#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace svagen {

/// Node kinds of the property AST. Parentheses never appear as nodes.
enum class Kind : std::uint8_t {
  Atom,
  Not,              // boolean !
  And,              // boolean &&
  Or,               // boolean ||
  RelOp,            // == / != (operator held in `name`)
  SysFunc,          // $rose/$fell/$stable/$past; argument in `arg`
  Delay,            // lhs ##n rhs, or leading ##n rhs (single child)
  DelayRange,       // lhs ##[m:n] rhs, or leading ##[m:n] rhs
  RepeatConsec,     // s[*n]
  RepeatRange,      // s[*m:n], s[*m:$]
  RepeatGoto,       // b[->n]
  RepeatNonConsec,  // b[=n]
  SeqConcat,        // lhs ##1 rhs; not produced by the parser
  ImplOverlap,      // |->
  ImplNonOverlap,   // |=>
  PropNot,
  PropAnd,
  PropOr,
  Until,
  Within,
  LocalVarDecl,     // (seq, v = bexpr), first binding of v
  LocalVarAssign,   // (seq, v = bexpr), rebinding of v
};

inline constexpr int kUnbounded = -1;

std::string_view kind_name(Kind k);

/// Tree representation of a parsed property. Value type; equality is structural.
struct AstNode {
  Kind kind = Kind::Atom;
  std::string name;  // identifier, relational operator, system-function name, local variable
  std::string arg;   // system-function argument identifier
  int lower = 0;
  int upper = 0;     // kUnbounded for '$'
  std::vector<AstNode> children;

  bool operator==(const AstNode&) const = default;

  static AstNode atom(std::string id);
  static AstNode unary(Kind k, AstNode child);
  static AstNode binary(Kind k, AstNode lhs, AstNode rhs);
};

enum class Edge : std::uint8_t { Posedge, Negedge };

std::string_view edge_name(Edge e);

struct Clock {
  Edge edge = Edge::Posedge;
  std::string signal;

  bool operator==(const Clock&) const = default;
  auto operator<=>(const Clock&) const = default;
};

/// One clocked assertion: `@(edge clk) [disable iff (expr)] body`.
struct AssertionUnit {
  Clock clock;
  std::vector<AstNode> disable;  // empty or exactly one boolean expression
  AstNode body;
  std::string source;

  bool has_disable() const { return !disable.empty(); }
  const AstNode& disable_expr() const { return disable.front(); }

  /// Structural equality ignoring the original source text.
  bool same_tree(const AssertionUnit& other) const {
    return clock == other.clock && disable == other.disable && body == other.body;
  }
};

/// A parser or checker message: 1-based position, message, offending token.
struct Diagnostic {
  int line = 1;
  int col = 1;
  std::string message;
  std::string token;

  bool operator==(const Diagnostic&) const = default;
};

/// Longest root-to-leaf node count.
int depth(const AstNode& node);

bool is_boolean_kind(Kind k);
bool is_local_var_kind(Kind k);

/// Pre-order visit of every node in the tree.
template <typename Fn>
void visit(const AstNode& node, Fn&& fn) {
  fn(node);
  for (const auto& c : node.children) visit(c, fn);
}

}  // namespace svagen
