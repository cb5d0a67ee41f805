// Direct transcription of the bounded semantics: per-start recursion over explicit
// integer positions and std::set match sets. Slow, but structurally independent of the
// compiled bitset evaluator, which is checked against it.

#include <set>
#include <unordered_map>

#include "svagen/equiv.hpp"

namespace svagen::equiv::reference {
namespace {

Pad flip(Pad p) { return p == Pad::Top ? Pad::Bottom : Pad::Top; }

struct Ctx {
  const Trace& trace;
  std::unordered_map<std::string, int> index;
  int full_length;  // L
  int end;          // effective end; positions >= end are padding

  Ctx(const Trace& t, int effective_end) : trace(t), full_length(t.length()), end(effective_end) {
    for (int i = 0; i < static_cast<int>(t.signals.size()); ++i) index[t.signals[i]] = i;
  }

  bool value(const std::string& sig, int cycle) const {
    auto it = index.find(sig);
    if (it == index.end()) {
      throw EquivError(EquivError::Code::MissingSignal, "signal '" + sig + "' missing from trace");
    }
    return trace.values[cycle][it->second];
  }

  int dollar(int lower) const { return std::max(lower, full_length); }
};

bool real_bool(const AstNode& b, int p, const Ctx& c) {
  switch (b.kind) {
    case Kind::Atom: return c.value(b.name, p);
    case Kind::Not: return !real_bool(b.children[0], p, c);
    case Kind::And: return real_bool(b.children[0], p, c) && real_bool(b.children[1], p, c);
    case Kind::Or: return real_bool(b.children[0], p, c) || real_bool(b.children[1], p, c);
    case Kind::RelOp: {
      bool eq = real_bool(b.children[0], p, c) == real_bool(b.children[1], p, c);
      return b.name == "==" ? eq : !eq;
    }
    case Kind::SysFunc: {
      const bool now = c.value(b.arg, p);
      const bool before = p > 0 && c.value(b.arg, p - 1);
      if (b.name == "$rose") return now && !before;
      if (b.name == "$fell") return !now && before;
      if (b.name == "$stable") return now == before;
      return p >= b.lower && c.value(b.arg, p - b.lower);  // $past
    }
    default:
      throw EquivError(EquivError::Code::Unsupported, "not a boolean expression");
  }
}

bool boolean(const AstNode& b, int p, Pad pad, const Ctx& c) {
  if (p >= c.end) return pad == Pad::Top;
  return real_bool(b, p, c);
}

bool negated(const AstNode& b, int p, Pad pad, const Ctx& c) {
  if (p >= c.end) return pad == Pad::Top;
  return !real_bool(b, p, c);
}

std::set<int> ends(const AstNode& s, int t, Pad pad, const Ctx& c);

// Position of the k-th occurrence of b at or after `start`, if any.
std::optional<int> goto_end(const AstNode& b, int k, int start, Pad pad, const Ctx& c) {
  int p = start;
  for (int i = 0; i < k; ++i) {
    for (;; ++p) {
      if (p >= c.end && pad == Pad::Bottom) return std::nullopt;
      if (boolean(b, p, pad, c)) break;
    }
    if (i + 1 < k) ++p;
  }
  return p;
}

std::set<int> ends(const AstNode& s, int t, Pad pad, const Ctx& c) {
  std::set<int> out;
  switch (s.kind) {
    case Kind::Atom:
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::RelOp:
    case Kind::SysFunc:
      if (boolean(s, t, pad, c)) out.insert(t);
      return out;

    case Kind::Delay:
    case Kind::DelayRange:
    case Kind::SeqConcat: {
      const int lo = s.kind == Kind::SeqConcat ? 1 : s.lower;
      const int hi = s.kind == Kind::SeqConcat ? 1 : (s.upper == kUnbounded ? c.dollar(s.lower) : s.upper);
      std::set<int> lhs_ends;
      const AstNode* rhs = &s.children.back();
      if (s.children.size() == 1) {
        lhs_ends.insert(t);
      } else {
        lhs_ends = ends(s.children[0], t, pad, c);
      }
      for (int e : lhs_ends) {
        for (int d = lo; d <= hi; ++d) {
          auto r = ends(*rhs, e + d, pad, c);
          out.insert(r.begin(), r.end());
        }
      }
      return out;
    }

    case Kind::RepeatConsec:
    case Kind::RepeatRange: {
      const int lo = s.lower;
      const int hi = s.upper == kUnbounded ? c.dollar(s.lower) : s.upper;
      std::set<int> current = ends(s.children[0], t, pad, c);
      for (int k = 1; k <= hi && !current.empty(); ++k) {
        if (k >= lo) out.insert(current.begin(), current.end());
        if (k == hi) break;
        std::set<int> next;
        for (int e : current) {
          auto r = ends(s.children[0], e + 1, pad, c);
          next.insert(r.begin(), r.end());
        }
        current = std::move(next);
      }
      return out;
    }

    case Kind::RepeatGoto:
      if (auto g = goto_end(s.children[0], s.lower, t, pad, c)) out.insert(*g);
      return out;

    case Kind::RepeatNonConsec: {
      auto g = goto_end(s.children[0], s.lower, t, pad, c);
      if (!g) return out;
      out.insert(*g);
      for (int j = 1; j <= c.full_length && negated(s.children[0], *g + j, pad, c); ++j) {
        out.insert(*g + j);
      }
      return out;
    }

    case Kind::Within: {
      for (int e2 : ends(s.children[1], t, pad, c)) {
        bool contained = false;
        for (int t1 = t; t1 <= e2 && !contained; ++t1) {
          for (int e1 : ends(s.children[0], t1, pad, c)) {
            if (e1 <= e2) {
              contained = true;
              break;
            }
          }
        }
        if (contained) out.insert(e2);
      }
      return out;
    }

    case Kind::LocalVarDecl:
    case Kind::LocalVarAssign:
      throw EquivError(EquivError::Code::Unsupported, "local variables are not supported");

    default:
      throw EquivError(EquivError::Code::Unsupported,
                       "property operator '" + std::string(kind_name(s.kind)) + "' used as a sequence");
  }
}

bool holds(const AstNode& p, int t, Pad pad, const Ctx& c) {
  switch (p.kind) {
    case Kind::ImplOverlap:
    case Kind::ImplNonOverlap: {
      const int shift = p.kind == Kind::ImplNonOverlap ? 1 : 0;
      // The antecedent is read in the opposite view: a match still pending at the end
      // creates no obligation under weak evaluation.
      for (int e : ends(p.children[0], t, flip(pad), c)) {
        if (!holds(p.children[1], e + shift, pad, c)) return false;
      }
      return true;
    }
    case Kind::PropNot: return !holds(p.children[0], t, flip(pad), c);
    case Kind::PropAnd: return holds(p.children[0], t, pad, c) && holds(p.children[1], t, pad, c);
    case Kind::PropOr: return holds(p.children[0], t, pad, c) || holds(p.children[1], t, pad, c);
    case Kind::Until:
      for (int k = t;; ++k) {
        const bool q = holds(p.children[1], k, pad, c);
        const bool lhs = holds(p.children[0], k, pad, c);
        // From the padding onward every position looks the same.
        if (k >= c.end) return q || lhs;
        if (q) return true;
        if (!lhs) return false;
      }
    default:
      return !ends(p, t, pad, c).empty();
  }
}

}  // namespace

std::vector<int> sequence_ends(const AstNode& seq, const Trace& trace, int start, Pad pad) {
  Ctx c(trace, trace.length());
  auto s = ends(seq, start, pad, c);
  return {s.begin(), s.end()};
}

Verdict verdict_at(const AstNode& body, const Trace& trace, int start) {
  Ctx c(trace, trace.length());
  return Verdict{holds(body, start, Pad::Top, c), holds(body, start, Pad::Bottom, c)};
}

bool eval_assertion(const AssertionUnit& unit, const Trace& trace) {
  const int L = trace.length();
  Ctx full(trace, L);
  for (int t = 0; t < L; ++t) {
    if (holds(unit.body, t, Pad::Top, full)) continue;
    bool aborted = false;
    if (unit.has_disable()) {
      for (int j = t; j < L && !aborted; ++j) {
        if (!real_bool(unit.disable_expr(), j, full)) continue;
        Ctx cut(trace, j);
        aborted = holds(unit.body, t, Pad::Top, cut);
      }
    }
    if (!aborted) return false;
  }
  return true;
}

}  // namespace svagen::equiv::reference
