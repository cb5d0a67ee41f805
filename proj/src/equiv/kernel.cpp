#include <algorithm>
#include <limits>

#include "compiled.hpp"
#include "svagen/equiv.hpp"

namespace svagen::equiv {
namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kChunk = std::uint64_t{1} << 14;

// Shared prologue for both drivers: either a plan or an early Unsupported result.
std::optional<RelationResult> unsupported_or_plan(const AssertionUnit& gen, const AssertionUnit& ref,
                                                  const BoundConfig& cfg, BoundPlan& plan) {
  if (!(gen.clock == ref.clock)) plan_bounds(gen, ref, cfg);  // throws ClockMismatch
  if (uses_local_vars(gen) || uses_local_vars(ref)) {
    RelationResult r;
    r.relation = Relation::Unsupported;
    r.note = "local variables are not supported by the equivalence checker";
    return r;
  }
  plan = plan_bounds(gen, ref, cfg);
  return std::nullopt;
}

RelationResult finish(const BoundPlan& plan, std::uint64_t gen_only, std::uint64_t ref_only) {
  RelationResult r;
  r.length = plan.length;
  r.signals = plan.signals;
  if (gen_only != kNone) r.witness_gen_only = trace_from_index(plan.signals, plan.length, gen_only);
  if (ref_only != kNone) r.witness_ref_only = trace_from_index(plan.signals, plan.length, ref_only);
  if (gen_only == kNone && ref_only == kNone) {
    r.relation = Relation::Equivalent;
  } else if (gen_only == kNone) {
    r.relation = Relation::Tightening;
  } else if (ref_only == kNone) {
    r.relation = Relation::Widening;
  } else {
    r.relation = Relation::NoRelationship;
  }
  return r;
}

}  // namespace

RelationResult check_relation(const AssertionUnit& gen, const AssertionUnit& ref,
                              const BoundConfig& cfg) {
  BoundPlan plan;
  if (auto early = unsupported_or_plan(gen, ref, cfg, plan)) return *early;

  const int L = plan.length;
  const int S = static_cast<int>(plan.signals.size());
  const detail::AssertionEvaluator gen_proto(gen, plan.signals, L);
  const detail::AssertionEvaluator ref_proto(ref, plan.signals, L);
  const std::uint64_t total = std::uint64_t{1} << (S * L);
  const std::uint64_t cycle_mask = (std::uint64_t{1} << L) - 1;

  std::uint64_t gen_only = kNone;
  std::uint64_t ref_only = kNone;
  // Chunks are visited in index order, so the first chunk with a hit holds the
  // canonical (lowest-index) witness for that direction.
  for (std::uint64_t base = 0; base < total && (gen_only == kNone || ref_only == kNone);
       base += kChunk) {
    const auto end = static_cast<std::int64_t>(std::min(total, base + kChunk));
    std::uint64_t chunk_gen = kNone;
    std::uint64_t chunk_ref = kNone;
#pragma omp parallel reduction(min : chunk_gen, chunk_ref)
    {
      detail::AssertionEvaluator g = gen_proto;
      detail::AssertionEvaluator r = ref_proto;
      std::vector<std::uint64_t> masks(S);
#pragma omp for schedule(static)
      for (std::int64_t i = static_cast<std::int64_t>(base); i < end; ++i) {
        const auto index = static_cast<std::uint64_t>(i);
        for (int s = 0; s < S; ++s) masks[s] = (index >> (s * L)) & cycle_mask;
        const bool pg = g.passes(masks);
        const bool pr = r.passes(masks);
        if (pg && !pr) chunk_gen = std::min(chunk_gen, index);
        if (pr && !pg) chunk_ref = std::min(chunk_ref, index);
      }
    }
    if (gen_only == kNone) gen_only = chunk_gen;
    if (ref_only == kNone) ref_only = chunk_ref;
  }
  return finish(plan, gen_only, ref_only);
}

RelationResult check_relation_serial(const AssertionUnit& gen, const AssertionUnit& ref,
                                     const BoundConfig& cfg) {
  BoundPlan plan;
  if (auto early = unsupported_or_plan(gen, ref, cfg, plan)) return *early;

  const int L = plan.length;
  const std::uint64_t total = std::uint64_t{1} << (plan.signals.size() * L);
  std::uint64_t gen_only = kNone;
  std::uint64_t ref_only = kNone;
  for (std::uint64_t i = 0; i < total && (gen_only == kNone || ref_only == kNone); ++i) {
    const Trace t = trace_from_index(plan.signals, L, i);
    const bool pg = reference::eval_assertion(gen, t);
    const bool pr = reference::eval_assertion(ref, t);
    if (pg && !pr && gen_only == kNone) gen_only = i;
    if (pr && !pg && ref_only == kNone) ref_only = i;
  }
  return finish(plan, gen_only, ref_only);
}

}  // namespace svagen::equiv
