#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "svagen/dataset.hpp"
#include "svagen/equiv.hpp"
#include "svagen/genloop.hpp"
#include "svagen/syntax_gate.hpp"

namespace svagen {

struct SampleResult {
  std::string id;
  Tier tier = Tier::D1;
  std::string category;
  std::string reference;
  std::string candidate;
  bool syntax_pass = false;
  std::optional<ErrorLabel> label;                // set iff !syntax_pass
  std::optional<equiv::Relation> relation;        // set iff syntax_pass
  int rounds = 0;
  std::string note;  // first diagnostic, provider error, or budget reason
};

nlohmann::ordered_json sample_to_json(const SampleResult& r);
SampleResult sample_from_json(const nlohmann::json& j);

struct HarnessConfig {
  equiv::BoundConfig bounds;
  std::string prompt_template;  // empty = built-in generation template
};

/// One single-pass generation per record, then check_syntax and, on Pass, check_relation
/// against the record's SVA. Samples run in parallel; results are sorted by id.
std::vector<SampleResult> run_benchmark(const std::vector<DatasetRecord>& records, Provider& provider,
                                        const HarnessConfig& cfg = {});

struct TierStats {
  std::string tier;  // "D1".."D4" or "overall"
  int n_total = 0;
  int n_pass = 0;
  int n_eq = 0;
  double spr = 0.0;
  std::optional<double> ser;  // absent when n_pass == 0
};

nlohmann::ordered_json tier_stats_to_json(const TierStats& s);
/// Needs "tier"; counts default to 0, spr/ser are read as given.
TierStats tier_stats_from_json(const nlohmann::json& j);

/// Tiers that have samples, in D1..D4 order, then "overall".
std::vector<TierStats> compute_metrics(const std::vector<SampleResult>& results);

/// Rows are tiers, columns are labels or relations.
struct Matrix {
  std::vector<std::string> columns;
  std::vector<std::pair<std::string, std::vector<double>>> rows;
};

inline constexpr std::array<equiv::Relation, 4> kRelationColumns = {
    equiv::Relation::Equivalent, equiv::Relation::Widening, equiv::Relation::Tightening,
    equiv::Relation::NoRelationship};

struct Attribution {
  Matrix syntax;    // label counts over N_total
  Matrix relation;  // relation counts over N_pass minus Unsupported
  std::map<std::string, int> unsupported;  // per tier, only tiers with any
};

Attribution attribution(const std::vector<SampleResult>& results);

struct RefinementWeight {
  std::string category;
  int support = 0;  // samples in the category
  double ser = 0.0;  // 0 when nothing in the category passed syntax
  double multiplier = 1.0;

  bool operator==(const RefinementWeight&) const = default;
};

/// Categories with support >= min_support and SER < threshold, weighted by
/// clamp(threshold / max(SER, 1e-6), 1, 4). Sorted by category.
std::vector<RefinementWeight> refinement_signal(const std::vector<SampleResult>& results,
                                                double ser_threshold, int min_support);

struct BenchmarkReport {
  std::vector<TierStats> tiers;
  Attribution attr;
  equiv::BoundConfig bounds;
  std::vector<RefinementWeight> refinement;
};

BenchmarkReport build_report(const std::vector<SampleResult>& results, const equiv::BoundConfig& bounds,
                             double ser_threshold = 0.5, int min_support = 10);

/// Half away from zero, one decimal.
double round1(double x);
/// Mean of the given percentage-point deltas, rounded to one decimal.
double mean_delta_pp(const std::vector<double>& deltas);

using Baselines = std::map<std::string, std::vector<TierStats>>;

struct RenderedReport {
  std::string json;
  std::string markdown;
  std::string syntax_csv;
  std::string relation_csv;
};

RenderedReport render_report(const BenchmarkReport& report, const Baselines& baselines = {});

/// Replay table that answers each record's single-pass prompt with its own SVA.
std::map<std::string, std::vector<std::string>> echo_replay_table(const std::vector<DatasetRecord>& records,
                                                                  const std::string& prompt_template = {});

}  // namespace svagen
