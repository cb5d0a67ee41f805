#include "compiled.hpp"

#include <algorithm>
#include <climits>

namespace svagen::equiv::detail {
namespace {

constexpr int kSaturate = 1 << 20;

std::uint64_t low_mask(int k) {
  if (k <= 0) return 0;
  return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
}

Pad flip(Pad p) { return p == Pad::Top ? Pad::Bottom : Pad::Top; }

int sat(long v) { return static_cast<int>(std::min<long>(v, kSaturate)); }

}  // namespace

PosSet PosSet::from(int p) {
  PosSet s;
  if (p >= kHorizon) return s;
  p = std::max(p, 0);
  const int word = p >> 6;
  s.w_[word] = ~std::uint64_t{0} << (p & 63);
  for (int i = word + 1; i < kWords; ++i) s.w_[i] = ~std::uint64_t{0};
  return s;
}

int PosSet::next(int p) const {
  if (p < 0) p = 0;
  if (p >= kHorizon) return -1;
  int word = p >> 6;
  std::uint64_t bits = w_[word] & (~std::uint64_t{0} << (p & 63));
  for (;;) {
    if (bits) return (word << 6) + std::countr_zero(bits);
    if (++word >= kWords) return -1;
    bits = w_[word];
  }
}

int PosSet::last() const {
  for (int word = kWords - 1; word >= 0; --word) {
    if (w_[word]) return (word << 6) + 63 - std::countl_zero(w_[word]);
  }
  return -1;
}

PosSet PosSet::shifted(int k) const {
  if (k <= 0) return *this;
  PosSet s;
  if (k >= kHorizon) return s;
  const int words = k >> 6;
  const int bits = k & 63;
  for (int i = kWords - 1; i >= words; --i) {
    std::uint64_t v = w_[i - words] << bits;
    if (bits && i - words - 1 >= 0) v |= w_[i - words - 1] >> (64 - bits);
    s.w_[i] = v;
  }
  return s;
}

CompiledProperty::CompiledProperty(const AstNode& body, const std::vector<std::string>& signals,
                                   int length)
    : length_(length), full_(low_mask(length)) {
  if (length < 1 || length > 62) {
    throw EquivError(EquivError::Code::InvalidConfig, "trace length must be in [1, 62]");
  }
  root_ = add(body, signals);
  real_.assign(nodes_.size(), 0);

  // Horizon: the furthest cycle reached from any property-level start <= L.
  int reach = 0;
  auto walk = [&](auto&& self, int id) -> void {
    const Node& n = nodes_[id];
    switch (n.kind) {
      case Kind::ImplOverlap:
      case Kind::ImplNonOverlap:
        reach = std::max(reach, max_end(n.a, length_) + 1);
        self(self, n.b);
        break;
      case Kind::PropNot:
        self(self, n.a);
        break;
      case Kind::PropAnd:
      case Kind::PropOr:
      case Kind::Until:
        self(self, n.a);
        self(self, n.b);
        break;
      default:
        reach = std::max(reach, max_end(id, length_));
    }
  };
  walk(walk, root_);
  horizon_ = reach;
  if (horizon_ >= kHorizon) {
    throw EquivError(EquivError::Code::BudgetExceeded,
                     "match horizon of " + std::to_string(horizon_) + " cycles exceeds " +
                         std::to_string(kHorizon - 1));
  }
}

int CompiledProperty::add(const AstNode& n, const std::vector<std::string>& signals) {
  if (is_local_var_kind(n.kind)) {
    throw EquivError(EquivError::Code::Unsupported, "local variables are not supported");
  }
  Node c;
  c.kind = n.kind;
  c.lower = n.lower;
  c.upper = n.upper;
  c.boolean = is_boolean_kind(n.kind);
  if (n.children.size() == 1) {
    const bool leading_delay =
        n.kind == Kind::Delay || n.kind == Kind::DelayRange || n.kind == Kind::SeqConcat;
    (leading_delay ? c.b : c.a) = add(n.children[0], signals);
  } else if (n.children.size() == 2) {
    c.a = add(n.children[0], signals);
    c.b = add(n.children[1], signals);
  }
  if (n.kind == Kind::SeqConcat) c.lower = c.upper = 1;
  if (n.kind == Kind::RelOp) c.equals = n.name == "==";
  if (n.kind == Kind::Atom || n.kind == Kind::SysFunc) {
    const std::string& sig = n.kind == Kind::Atom ? n.name : n.arg;
    auto it = std::find(signals.begin(), signals.end(), sig);
    if (it == signals.end()) {
      throw EquivError(EquivError::Code::MissingSignal, "signal '" + sig + "' missing from trace");
    }
    c.signal = static_cast<int>(it - signals.begin());
    c.sysfunc = n.kind == Kind::SysFunc ? n.name : std::string{};
  }
  nodes_.push_back(std::move(c));
  return static_cast<int>(nodes_.size()) - 1;
}

int CompiledProperty::max_end(int id, int max_start) const {
  const Node& n = nodes_[id];
  if (n.boolean) return max_start;
  switch (n.kind) {
    case Kind::Delay:
    case Kind::DelayRange:
    case Kind::SeqConcat: {
      const int hi = n.upper == kUnbounded ? dollar(n.lower) : n.upper;
      const int lhs = n.a < 0 ? max_start : max_end(n.a, max_start);
      return max_end(n.b, sat(long{lhs} + hi));
    }
    case Kind::RepeatConsec:
    case Kind::RepeatRange: {
      const int hi = n.upper == kUnbounded ? dollar(n.lower) : n.upper;
      int e = max_end(n.a, max_start);
      for (int k = 2; k <= hi && e < kSaturate; ++k) e = max_end(n.a, e + 1);
      return e;
    }
    case Kind::RepeatGoto: return sat(long{std::max(max_start, length_)} + n.lower - 1);
    case Kind::RepeatNonConsec:
      return sat(long{std::max(max_start, length_)} + n.lower - 1 + length_);
    case Kind::Within: return max_end(n.b, max_start);
    default:
      throw EquivError(EquivError::Code::Unsupported,
                       "property operator '" + std::string(kind_name(n.kind)) + "' used as a sequence");
  }
}

void CompiledProperty::load(std::span<const std::uint64_t> masks) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (!n.boolean) continue;
    std::uint64_t v = 0;
    switch (n.kind) {
      case Kind::Atom: v = masks[n.signal] & full_; break;
      case Kind::Not: v = ~real_[n.a] & full_; break;
      case Kind::And: v = real_[n.a] & real_[n.b]; break;
      case Kind::Or: v = real_[n.a] | real_[n.b]; break;
      case Kind::RelOp:
        v = real_[n.a] ^ real_[n.b];
        if (n.equals) v = ~v & full_;
        break;
      case Kind::SysFunc: {
        const std::uint64_t now = masks[n.signal] & full_;
        const std::uint64_t before = (now << 1) & full_;
        if (n.sysfunc == "$rose") {
          v = now & ~before;
        } else if (n.sysfunc == "$fell") {
          v = ~now & before;
        } else if (n.sysfunc == "$stable") {
          v = ~(now ^ before) & full_;
        } else {
          v = (now << n.lower) & full_;
        }
        break;
      }
      default: break;
    }
    real_[i] = v;
  }
}

PosSet CompiledProperty::bool_set(int id, Pad pad, int end, bool negate) const {
  std::uint64_t v = negate ? (~real_[id] & full_) : real_[id];
  PosSet s = PosSet::low(v & low_mask(end));
  if (pad == Pad::Top) s |= PosSet::from(end);
  return s;
}

PosSet CompiledProperty::goto_ends(int b, int count, PosSet starts, Pad pad, int end) const {
  const PosSet hits = bool_set(b, pad, end);
  PosSet out;
  for (int i = 0; i < count; ++i) {
    out = PosSet{};
    int p = starts.first();
    while (p >= 0) {
      const int q = hits.next(p);
      if (q < 0) break;
      out.set(q);
      p = starts.next(q + 1);
    }
    if (i + 1 < count) starts = out.shifted(1);
  }
  return out;
}

PosSet CompiledProperty::seq_ends(int id, const PosSet& starts, Pad pad, int end) {
  const Node& n = nodes_[id];
  if (n.boolean) return starts & bool_set(id, pad, end);
  switch (n.kind) {
    case Kind::Delay:
    case Kind::DelayRange:
    case Kind::SeqConcat: {
      const PosSet lhs = n.a < 0 ? starts : seq_ends(n.a, starts, pad, end);
      if (lhs.none()) return {};
      const int hi = n.upper == kUnbounded ? dollar(n.lower) : n.upper;
      PosSet next;
      for (int d = n.lower; d <= hi; ++d) next |= lhs.shifted(d);
      return seq_ends(n.b, next, pad, end);
    }
    case Kind::RepeatConsec:
    case Kind::RepeatRange: {
      const int hi = n.upper == kUnbounded ? dollar(n.lower) : n.upper;
      PosSet out;
      PosSet current = seq_ends(n.a, starts, pad, end);
      for (int k = 1; k <= hi && current.any(); ++k) {
        if (k >= n.lower) out |= current;
        if (k == hi) break;
        current = seq_ends(n.a, current.shifted(1), pad, end);
      }
      return out;
    }
    case Kind::RepeatGoto:
      return goto_ends(n.a, n.lower, starts, pad, end);
    case Kind::RepeatNonConsec: {
      PosSet out = goto_ends(n.a, n.lower, starts, pad, end);
      const PosSet quiet = bool_set(n.a, pad, end, /*negate=*/true);
      PosSet tail = out;
      for (int j = 1; j <= length_; ++j) {
        tail = tail.shifted(1) & quiet;
        if (tail.none()) break;
        out |= tail;
      }
      return out;
    }
    case Kind::Within: {
      PosSet out;
      for (int t = starts.first(); t >= 0; t = starts.next(t + 1)) {
        const PosSet outer = seq_ends(n.b, PosSet::single(t), pad, end);
        if (outer.none()) continue;
        const int outer_last = outer.last();
        int earliest = INT_MAX;
        for (int t1 = t; t1 <= outer_last && t1 < earliest; ++t1) {
          const int f = seq_ends(n.a, PosSet::single(t1), pad, end).first();
          if (f >= 0) earliest = std::min(earliest, f);
        }
        if (earliest <= outer_last) out |= outer & PosSet::from(earliest);
      }
      return out;
    }
    default:
      throw EquivError(EquivError::Code::Unsupported,
                       "property operator '" + std::string(kind_name(n.kind)) + "' used as a sequence");
  }
}

PosSet CompiledProperty::ends(const PosSet& starts, Pad pad, int end) {
  return seq_ends(root_, starts, pad, end);
}

std::uint64_t CompiledProperty::prop(int id, Pad pad, int end) {
  const Node& n = nodes_[id];
  const std::uint64_t span = low_mask(end + 1);
  switch (n.kind) {
    case Kind::ImplOverlap:
    case Kind::ImplNonOverlap: {
      const std::uint64_t q = prop(n.b, pad, end);
      PosSet good = PosSet::low(q & low_mask(end));
      if ((q >> end) & 1u) good |= PosSet::from(end);
      const PosSet bad = ~good;
      const int shift = n.kind == Kind::ImplNonOverlap ? 1 : 0;
      std::uint64_t out = 0;
      for (int t = 0; t <= end; ++t) {
        const PosSet e = seq_ends(n.a, PosSet::single(t), flip(pad), end).shifted(shift);
        if ((e & bad).none()) out |= std::uint64_t{1} << t;
      }
      return out;
    }
    case Kind::PropNot: return ~prop(n.a, flip(pad), end) & span;
    case Kind::PropAnd: return prop(n.a, pad, end) & prop(n.b, pad, end);
    case Kind::PropOr: return prop(n.a, pad, end) | prop(n.b, pad, end);
    case Kind::Until: {
      const std::uint64_t lhs = prop(n.a, pad, end);
      const std::uint64_t rhs = prop(n.b, pad, end);
      std::uint64_t w = ((rhs | lhs) >> end) & 1u;  // greatest fixpoint in the padding
      std::uint64_t out = w << end;
      for (int t = end - 1; t >= 0; --t) {
        w = ((rhs >> t) & 1u) | (((lhs >> t) & 1u) & w);
        out |= w << t;
      }
      return out;
    }
    default: {
      if (n.boolean) {
        std::uint64_t out = real_[id] & low_mask(end);
        if (pad == Pad::Top) out |= std::uint64_t{1} << end;
        return out;
      }
      std::uint64_t out = 0;
      for (int t = 0; t <= end; ++t) {
        if (seq_ends(id, PosSet::single(t), pad, end).any()) out |= std::uint64_t{1} << t;
      }
      return out;
    }
  }
}

std::uint64_t CompiledProperty::holds(Pad pad, int end) { return prop(root_, pad, end); }

}  // namespace svagen::equiv::detail

namespace svagen::equiv::detail {

AssertionEvaluator::AssertionEvaluator(const AssertionUnit& unit,
                                       const std::vector<std::string>& signals, int length)
    : body_(unit.body, signals, length), length_(length) {
  if (unit.has_disable()) disable_.emplace(unit.disable_expr(), signals, length);
}

bool AssertionEvaluator::passes(std::span<const std::uint64_t> masks) {
  body_.load(masks);
  const std::uint64_t real = low_mask(length_);
  std::uint64_t failing = ~body_.holds(Pad::Top, length_) & real;
  if (!failing) return true;
  if (!disable_) return false;

  disable_->load(masks);
  const std::uint64_t fires = disable_->holds(Pad::Bottom, length_) & real;
  if (!fires) return false;
  for (int j = 0; j < length_ && failing; ++j) {
    if (!((fires >> j) & 1u)) continue;
    // Attempts starting at or before j are cut at j.
    const std::uint64_t cut = body_.holds(Pad::Top, j);
    failing &= ~(cut & low_mask(j + 1));
  }
  return failing == 0;
}

}  // namespace svagen::equiv::detail
