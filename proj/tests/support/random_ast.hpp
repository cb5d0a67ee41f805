#pragma once

// Random well-formed trees for property tests. Built directly as AstNodes (not
// through the parser) so the parser and printer can be checked against them.

#include <random>
#include <string>
#include <vector>

#include "svagen/ast.hpp"

namespace testgen {

using svagen::AstNode;
using svagen::Kind;
using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline AstNode leaf(Rng& rng, const std::vector<std::string>& sigs, bool sysfuncs) {
  const std::string& s = sigs[pick(rng, 0, static_cast<int>(sigs.size()) - 1)];
  if (sysfuncs && pick(rng, 0, 6) == 0) {
    static const char* kFns[] = {"$rose", "$fell", "$stable", "$past"};
    AstNode n;
    n.kind = Kind::SysFunc;
    n.name = kFns[pick(rng, 0, 3)];
    n.arg = s;
    n.lower = n.upper = n.name == "$past" ? pick(rng, 1, 2) : 1;
    return n;
  }
  return AstNode::atom(s);
}

inline AstNode random_bool(Rng& rng, const std::vector<std::string>& sigs, int depth,
                           bool sysfuncs = true) {
  if (depth <= 1 || pick(rng, 0, 2) == 0) return leaf(rng, sigs, sysfuncs);
  switch (pick(rng, 0, 4)) {
    case 0: return AstNode::unary(Kind::Not, random_bool(rng, sigs, depth - 1, sysfuncs));
    case 1:
      return AstNode::binary(Kind::And, random_bool(rng, sigs, depth - 1, sysfuncs),
                             random_bool(rng, sigs, depth - 1, sysfuncs));
    case 2:
      return AstNode::binary(Kind::Or, random_bool(rng, sigs, depth - 1, sysfuncs),
                             random_bool(rng, sigs, depth - 1, sysfuncs));
    default: {
      AstNode n = AstNode::binary(Kind::RelOp, random_bool(rng, sigs, depth - 1, sysfuncs),
                                  random_bool(rng, sigs, depth - 1, sysfuncs));
      n.name = pick(rng, 0, 1) ? "==" : "!=";
      return n;
    }
  }
}

struct Limits {
  int max_delay = 2;
  int max_rep = 2;
  bool unbounded = false;
  bool sysfuncs = true;
};

inline AstNode random_sequence(Rng& rng, const std::vector<std::string>& sigs, int depth,
                               const Limits& lim = {}) {
  if (depth <= 1) return leaf(rng, sigs, lim.sysfuncs);
  auto sub = [&] { return random_sequence(rng, sigs, depth - 1, lim); };
  auto sub_bool = [&] { return random_bool(rng, sigs, depth - 1, lim.sysfuncs); };
  switch (pick(rng, 0, 9)) {
    case 0: return random_bool(rng, sigs, depth, lim.sysfuncs);
    case 1:
    case 2: {
      AstNode n = AstNode::binary(Kind::Delay, sub(), sub());
      n.lower = n.upper = pick(rng, 0, lim.max_delay);
      return n;
    }
    case 3: {
      AstNode n = AstNode::unary(Kind::Delay, sub());
      n.lower = n.upper = pick(rng, 1, lim.max_delay);
      return n;
    }
    case 4: {
      AstNode n = AstNode::binary(Kind::DelayRange, sub(), sub());
      n.lower = pick(rng, 0, 1);
      n.upper = lim.unbounded && pick(rng, 0, 3) == 0 ? svagen::kUnbounded
                                                       : pick(rng, n.lower, lim.max_delay);
      return n;
    }
    case 5: {
      AstNode n = AstNode::unary(Kind::RepeatConsec, sub());
      n.lower = n.upper = pick(rng, 1, lim.max_rep);
      return n;
    }
    case 6: {
      AstNode n = AstNode::unary(Kind::RepeatRange, sub());
      n.lower = pick(rng, 1, lim.max_rep);
      n.upper = lim.unbounded && pick(rng, 0, 3) == 0 ? svagen::kUnbounded
                                                       : pick(rng, n.lower, lim.max_rep);
      return n;
    }
    case 7: {
      AstNode n = AstNode::unary(Kind::RepeatGoto, sub_bool());
      n.lower = n.upper = pick(rng, 1, lim.max_rep);
      return n;
    }
    case 8: {
      AstNode n = AstNode::unary(Kind::RepeatNonConsec, sub_bool());
      n.lower = n.upper = pick(rng, 1, lim.max_rep);
      return n;
    }
    default: return AstNode::binary(Kind::Within, sub(), sub());
  }
}

inline AstNode random_property(Rng& rng, const std::vector<std::string>& sigs, int depth,
                               const Limits& lim = {}) {
  if (depth <= 1) return leaf(rng, sigs, lim.sysfuncs);
  auto sub = [&] { return random_property(rng, sigs, depth - 1, lim); };
  switch (pick(rng, 0, 8)) {
    case 0:
    case 1: return random_sequence(rng, sigs, depth, lim);
    case 2: return AstNode::binary(Kind::ImplOverlap, random_sequence(rng, sigs, depth - 1, lim), sub());
    case 3:
      return AstNode::binary(Kind::ImplNonOverlap, random_sequence(rng, sigs, depth - 1, lim), sub());
    case 4: return AstNode::unary(Kind::PropNot, sub());
    case 5: return AstNode::binary(Kind::PropAnd, sub(), sub());
    case 6: return AstNode::binary(Kind::PropOr, sub(), sub());
    default: return AstNode::binary(Kind::Until, sub(), sub());
  }
}

inline svagen::AssertionUnit random_unit(Rng& rng, const std::vector<std::string>& sigs, int depth,
                                         bool allow_all, Limits lim = {}) {
  svagen::AssertionUnit u;
  u.clock = svagen::Clock{svagen::Edge::Posedge, "clk"};
  if (allow_all) {
    lim.unbounded = true;
    if (pick(rng, 0, 3) == 0) u.disable.push_back(random_bool(rng, sigs, 2, lim.sysfuncs));
  }
  u.body = random_property(rng, sigs, depth, lim);
  return u;
}

}  // namespace testgen
