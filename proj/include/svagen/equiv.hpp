#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "svagen/ast.hpp"

// Bounded finite-trace semantics for the supported property fragment.
//
// A trace has L real cycles. Positions at or beyond the effective end are padding:
// under weak evaluation every boolean holds there, under strong evaluation none does.
// `not` swaps weak and strong, and so does the antecedent of an implication. An assertion passes when the weak verdict holds for an
// attempt at every start cycle. `disable iff` aborts an attempt at cycle j: the attempt
// then passes if its weak verdict on the cycles before j holds. Unbounded ranges ('$')
// are truncated to L.

namespace svagen::equiv {

struct Trace {
  std::vector<std::string> signals;
  std::vector<std::vector<bool>> values;  // [cycle][signal]

  int length() const { return static_cast<int>(values.size()); }
  /// Throws std::out_of_range for unknown names.
  bool at(int cycle, std::string_view signal) const;
};

enum class Pad { Top, Bottom };

struct Verdict {
  bool holds_weak = false;
  bool holds_strong = false;
};

enum class Relation { Equivalent, Tightening, Widening, NoRelationship, Unsupported };

std::string_view relation_name(Relation r);
std::optional<Relation> parse_relation(std::string_view name);

struct BoundConfig {
  int length = 0;       // trace length L; 0 picks (max temporal span) + 2
  int max_signals = 0;  // 0 = no separate limit
  int cap = 22;         // hard cap on S x L
};

class EquivError : public std::runtime_error {
 public:
  enum class Code { ClockMismatch, BudgetExceeded, MissingSignal, InvalidConfig, Unsupported };
  EquivError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

struct RelationResult {
  Relation relation = Relation::Unsupported;
  int length = 0;  // L
  std::vector<std::string> signals;
  std::optional<Trace> witness_gen_only;  // passes gen, fails ref
  std::optional<Trace> witness_ref_only;  // passes ref, fails gen
  std::string note;                       // reason for Unsupported

  int signal_count() const { return static_cast<int>(signals.size()); }
};

/// Maximum number of cycles one attempt of `node` spans beyond its start.
int temporal_span(const AstNode& node);

bool uses_local_vars(const AssertionUnit& unit);

/// Identifiers referenced by the body and disable condition, sorted.
std::vector<std::string> referenced_signals(const AssertionUnit& unit);

/// Chooses L and the signal set for a pair and enforces the budget.
struct BoundPlan {
  int length = 0;
  std::vector<std::string> signals;
};
BoundPlan plan_bounds(const AssertionUnit& gen, const AssertionUnit& ref, const BoundConfig& cfg);

bool eval_assertion(const AssertionUnit& unit, const Trace& trace);
Verdict verdict_at(const AstNode& body, const Trace& trace, int start);

/// Match end cycles of a sequence started at `start`; ends past the trace are padding cycles.
std::vector<int> sequence_ends(const AstNode& seq, const Trace& trace, int start, Pad pad);

/// Exhaustive bounded comparison of pass sets; trace enumeration runs in parallel.
RelationResult check_relation(const AssertionUnit& gen, const AssertionUnit& ref,
                              const BoundConfig& cfg = {});

/// Single-threaded comparison built on the set-based reference evaluator.
RelationResult check_relation_serial(const AssertionUnit& gen, const AssertionUnit& ref,
                                     const BoundConfig& cfg = {});

/// Canonical enumeration order: bit (s * L + c) of `index` is signal s at cycle c.
Trace trace_from_index(const std::vector<std::string>& signals, int length, std::uint64_t index);

nlohmann::ordered_json result_to_json(const RelationResult& r);
nlohmann::ordered_json trace_to_json(const Trace& t);
/// Per-cycle signal table, one row per signal.
std::string format_trace_table(const Trace& t);

namespace reference {

bool eval_assertion(const AssertionUnit& unit, const Trace& trace);
Verdict verdict_at(const AstNode& body, const Trace& trace, int start);
std::vector<int> sequence_ends(const AstNode& seq, const Trace& trace, int start, Pad pad);

}  // namespace reference

}  // namespace svagen::equiv
