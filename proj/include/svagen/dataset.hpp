#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "svagen/analysis.hpp"
#include "svagen/annotator.hpp"

namespace svagen {

enum class Split { Train, Bench, Unassigned };

std::string_view split_name(Split s);
std::optional<Split> parse_split(std::string_view name);

/// One aligned (SVA, SVAD, CoT) entry.
struct DatasetRecord {
  std::string id;
  std::string sva;
  std::string normalized;
  SvadText svad;
  CotTrace cot;
  AnalysisProfile profile;
  Split split = Split::Unassigned;

  /// Tier and category, e.g. "D2/impl_ov|delay".
  std::string stratum() const;
};

/// Stable id: FNV-1a of the normalized text (which carries clock and disable).
std::string record_id(const std::string& normalized);

/// Parses and analyzes `sva`; throws std::invalid_argument with the first diagnostic
/// when it does not parse.
DatasetRecord make_record(const std::string& sva, SvadText svad);

/// First occurrence per normalized form wins; input order is preserved.
std::vector<DatasetRecord> dedup(const std::vector<DatasetRecord>& records);

struct SplitResult {
  std::vector<DatasetRecord> train;
  std::vector<DatasetRecord> bench;
};

/// Per-stratum split by (tier, category). Each stratum gets round-half-up(n * fraction)
/// bench records, then the total is repaired toward round-half-up(N * fraction) one
/// record at a time, largest strata first. Members are chosen by a seeded shuffle.
SplitResult stratified_split(const std::vector<DatasetRecord>& records, double bench_fraction,
                             std::uint64_t seed);

nlohmann::ordered_json record_to_json(const DatasetRecord& r);
/// Rebuilds the profile from `sva`; throws std::invalid_argument on inconsistent lines.
DatasetRecord record_from_json(const nlohmann::json& j);

std::string to_jsonl(const std::vector<DatasetRecord>& records);
std::vector<DatasetRecord> from_jsonl(std::string_view text);
void write_jsonl(const std::string& path, const std::vector<DatasetRecord>& records);
std::vector<DatasetRecord> read_jsonl(const std::string& path);

class SynthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recipe for a synthetic corpus.
struct SynthSpec {
  std::map<Tier, int> counts;
  /// Construct families to draw from: any of kCategoryFamilies plus "bool_ops"
  /// (!, &&, ||, ==, !=). Atoms are always available.
  std::set<std::string> families = {"bool_ops", "impl_ov", "impl_nov",  "delay",  "rep_consec",
                                    "rep_goto", "rep_nonconsec", "sampling", "prop_logic",
                                    "until",    "within"};
  std::vector<std::string> signals = {"a", "b", "c"};
  std::string clock = "clk";
  double disable_probability = 0.15;  // adds `disable iff (rst)`
  int max_delay = 2;
  int max_repeat = 2;
  /// Every record must be checkable: S x L (with L = span + 2) at most this.
  int max_trace_bits = 16;
  /// Relative sampling weight per category label; missing labels weigh 1.
  std::map<std::string, double> category_weights;
};

/// Deterministic under (spec, seed). Records come out per tier in D1..D4 order with
/// SVADs from describe(). Throws SynthError when a tier cannot be reached with the
/// enabled families.
std::vector<DatasetRecord> synth_corpus(const SynthSpec& spec, std::uint64_t seed);

}  // namespace svagen
