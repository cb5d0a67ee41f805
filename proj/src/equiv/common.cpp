#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "compiled.hpp"
#include "svagen/equiv.hpp"

namespace svagen::equiv {

bool Trace::at(int cycle, std::string_view signal) const {
  auto it = std::find(signals.begin(), signals.end(), signal);
  if (it == signals.end()) throw std::out_of_range("unknown signal '" + std::string(signal) + "'");
  return values.at(cycle)[it - signals.begin()];
}

std::string_view relation_name(Relation r) {
  switch (r) {
    case Relation::Equivalent: return "Equivalent";
    case Relation::Tightening: return "Tightening";
    case Relation::Widening: return "Widening";
    case Relation::NoRelationship: return "NoRelationship";
    case Relation::Unsupported: return "Unsupported";
  }
  return "?";
}

std::optional<Relation> parse_relation(std::string_view name) {
  for (Relation r : {Relation::Equivalent, Relation::Tightening, Relation::Widening,
                     Relation::NoRelationship, Relation::Unsupported}) {
    if (relation_name(r) == name) return r;
  }
  return std::nullopt;
}

int temporal_span(const AstNode& n) {
  auto span = [](const AstNode& c) { return temporal_span(c); };
  switch (n.kind) {
    case Kind::Atom:
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::RelOp:
    case Kind::SysFunc: return 0;
    case Kind::Delay:
    case Kind::DelayRange:
    case Kind::SeqConcat: {
      const int hi = n.kind == Kind::SeqConcat ? 1 : (n.upper == kUnbounded ? n.lower : n.upper);
      const int lhs = n.children.size() == 2 ? span(n.children[0]) : 0;
      return lhs + hi + span(n.children.back());
    }
    case Kind::RepeatConsec:
    case Kind::RepeatRange: {
      const int k = n.upper == kUnbounded ? n.lower : n.upper;
      return k * span(n.children[0]) + (k - 1);
    }
    case Kind::RepeatGoto:
    case Kind::RepeatNonConsec: return n.lower - 1;
    case Kind::ImplOverlap: return span(n.children[0]) + span(n.children[1]);
    case Kind::ImplNonOverlap: return span(n.children[0]) + span(n.children[1]) + 1;
    case Kind::Until: return std::max(span(n.children[0]), span(n.children[1])) + 1;
    default: {
      int m = 0;
      for (const auto& c : n.children) m = std::max(m, span(c));
      return m;
    }
  }
}

bool uses_local_vars(const AssertionUnit& unit) {
  bool found = false;
  visit(unit.body, [&](const AstNode& x) { found = found || is_local_var_kind(x.kind); });
  return found;
}

std::vector<std::string> referenced_signals(const AssertionUnit& unit) {
  std::set<std::string> ids;
  auto collect = [&](const AstNode& root) {
    visit(root, [&](const AstNode& x) {
      if (x.kind == Kind::Atom) ids.insert(x.name);
      if (x.kind == Kind::SysFunc) ids.insert(x.arg);
    });
  };
  collect(unit.body);
  if (unit.has_disable()) collect(unit.disable_expr());
  return {ids.begin(), ids.end()};
}

BoundPlan plan_bounds(const AssertionUnit& gen, const AssertionUnit& ref, const BoundConfig& cfg) {
  if (!(gen.clock == ref.clock)) {
    throw EquivError(EquivError::Code::ClockMismatch,
                     "clock mismatch: @(" + std::string(edge_name(gen.clock.edge)) + " " +
                         gen.clock.signal + ") vs @(" + std::string(edge_name(ref.clock.edge)) +
                         " " + ref.clock.signal + ")");
  }
  if (cfg.cap < 1 || cfg.length < 0 || cfg.max_signals < 0) {
    throw EquivError(EquivError::Code::InvalidConfig, "bound settings must be non-negative");
  }

  std::set<std::string> all;
  for (const auto& s : referenced_signals(gen)) all.insert(s);
  for (const auto& s : referenced_signals(ref)) all.insert(s);
  BoundPlan plan;
  plan.signals.assign(all.begin(), all.end());
  const int S = static_cast<int>(plan.signals.size());
  const int span = std::max(temporal_span(gen.body), temporal_span(ref.body));

  if (cfg.max_signals > 0 && S > cfg.max_signals) {
    throw EquivError(EquivError::Code::BudgetExceeded,
                     std::to_string(S) + " signals exceed the limit of " +
                         std::to_string(cfg.max_signals));
  }
  // Enumeration indexes traces with one 64-bit word.
  const int cap = std::min(cfg.cap, 62);
  if (cfg.length > 0) {
    if (cfg.length < span + 1) {
      throw EquivError(EquivError::Code::InvalidConfig,
                       "trace length " + std::to_string(cfg.length) +
                           " is shorter than 1 + temporal span " + std::to_string(span));
    }
    plan.length = cfg.length;
  } else {
    plan.length = span + 2;
    if (S * plan.length > cap) plan.length = span + 1;
  }
  if (S * plan.length > cap) {
    throw EquivError(EquivError::Code::BudgetExceeded,
                     "S x L = " + std::to_string(S) + " x " + std::to_string(plan.length) +
                         " exceeds the cap of " + std::to_string(cap));
  }
  return plan;
}

Trace trace_from_index(const std::vector<std::string>& signals, int length, std::uint64_t index) {
  Trace t;
  t.signals = signals;
  t.values.assign(length, std::vector<bool>(signals.size(), false));
  for (std::size_t s = 0; s < signals.size(); ++s) {
    for (int c = 0; c < length; ++c) {
      t.values[c][s] = (index >> (s * length + c)) & 1u;
    }
  }
  return t;
}

namespace {

std::vector<std::uint64_t> masks_of(const Trace& trace) {
  std::vector<std::uint64_t> masks(trace.signals.size(), 0);
  for (int c = 0; c < trace.length(); ++c) {
    for (std::size_t s = 0; s < trace.signals.size(); ++s) {
      if (trace.values[c][s]) masks[s] |= std::uint64_t{1} << c;
    }
  }
  return masks;
}

}  // namespace

bool eval_assertion(const AssertionUnit& unit, const Trace& trace) {
  detail::AssertionEvaluator ev(unit, trace.signals, trace.length());
  const auto masks = masks_of(trace);
  return ev.passes(masks);
}

Verdict verdict_at(const AstNode& body, const Trace& trace, int start) {
  detail::CompiledProperty p(body, trace.signals, trace.length());
  p.load(masks_of(trace));
  const int bit = std::min(start, trace.length());
  return Verdict{((p.holds(Pad::Top, trace.length()) >> bit) & 1u) != 0,
                 ((p.holds(Pad::Bottom, trace.length()) >> bit) & 1u) != 0};
}

std::vector<int> sequence_ends(const AstNode& seq, const Trace& trace, int start, Pad pad) {
  detail::CompiledProperty p(seq, trace.signals, trace.length());
  p.load(masks_of(trace));
  const auto ends = p.ends(detail::PosSet::single(start), pad, trace.length());
  std::vector<int> out;
  for (int e = ends.first(); e >= 0; e = ends.next(e + 1)) out.push_back(e);
  return out;
}

nlohmann::ordered_json trace_to_json(const Trace& t) {
  nlohmann::ordered_json j;
  j["length"] = t.length();
  nlohmann::ordered_json sig = nlohmann::ordered_json::object();
  for (std::size_t s = 0; s < t.signals.size(); ++s) {
    std::string bits;
    for (int c = 0; c < t.length(); ++c) bits += t.values[c][s] ? '1' : '0';
    sig[t.signals[s]] = bits;
  }
  j["signals"] = std::move(sig);
  return j;
}

nlohmann::ordered_json result_to_json(const RelationResult& r) {
  nlohmann::ordered_json j;
  j["relation"] = relation_name(r.relation);
  j["L"] = r.length;
  j["S"] = r.signal_count();
  j["signals"] = r.signals;
  if (r.witness_gen_only) j["witness_gen_only"] = trace_to_json(*r.witness_gen_only);
  if (r.witness_ref_only) j["witness_ref_only"] = trace_to_json(*r.witness_ref_only);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::string format_trace_table(const Trace& t) {
  std::size_t width = 5;  // "cycle"
  for (const auto& s : t.signals) width = std::max(width, s.size());
  std::ostringstream out;
  auto pad = [&](const std::string& s) { return s + std::string(width - s.size(), ' '); };
  out << pad("cycle") << " |";
  for (int c = 0; c < t.length(); ++c) out << ' ' << c;
  out << '\n';
  for (std::size_t s = 0; s < t.signals.size(); ++s) {
    out << pad(t.signals[s]) << " |";
    for (int c = 0; c < t.length(); ++c) {
      out << ' ' << std::string(std::to_string(c).size() - 1, ' ') << (t.values[c][s] ? '1' : '0');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace svagen::equiv
