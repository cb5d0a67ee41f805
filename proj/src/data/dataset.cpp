#include "svagen/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "svagen/parser.hpp"
#include "svagen/printer.hpp"
#include "svagen/provider.hpp"

namespace svagen {

std::string_view split_name(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Bench: return "bench";
    case Split::Unassigned: return "unassigned";
  }
  return "?";
}

std::optional<Split> parse_split(std::string_view name) {
  for (Split s : {Split::Train, Split::Bench, Split::Unassigned}) {
    if (split_name(s) == name) return s;
  }
  return std::nullopt;
}

std::string DatasetRecord::stratum() const {
  return std::string(tier_name(profile.tier)) + "/" + profile.category;
}

std::string record_id(const std::string& normalized) { return prompt_hash(normalized); }

DatasetRecord make_record(const std::string& sva, SvadText svad) {
  ParseResult r = parse(sva);
  if (!r.ok()) {
    const Diagnostic& d = r.diagnostics.front();
    throw std::invalid_argument("record does not parse: " + std::to_string(d.line) + ":" +
                                std::to_string(d.col) + ": " + d.message);
  }
  DatasetRecord rec;
  rec.sva = sva;
  rec.normalized = normalize(*r.unit);
  rec.id = record_id(rec.normalized);
  rec.svad = std::move(svad);
  rec.cot = build_cot(*r.unit);
  rec.profile = analyze(*r.unit);
  return rec;
}

std::vector<DatasetRecord> dedup(const std::vector<DatasetRecord>& records) {
  std::unordered_set<std::string> seen;
  std::vector<DatasetRecord> out;
  for (const auto& r : records) {
    if (seen.insert(r.normalized).second) out.push_back(r);
  }
  return out;
}

namespace {

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5 + 1e-9)); }

}  // namespace

SplitResult stratified_split(const std::vector<DatasetRecord>& records, double fraction,
                             std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("bench fraction must be in (0, 1)");
  }
  SplitResult out;
  if (records.empty()) return out;

  std::map<std::string, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < records.size(); ++i) strata[records[i].stratum()].push_back(i);

  struct Quota {
    std::string key;
    int n;
    int take;
    double error;  // take - n * fraction
  };
  std::vector<Quota> quotas;
  int total = 0;
  for (const auto& [key, members] : strata) {
    const int n = static_cast<int>(members.size());
    const int take = std::clamp(round_half_up(n * fraction), 0, n);
    quotas.push_back({key, n, take, take - n * fraction});
    total += take;
  }

  // Global repair: move the total toward round(N * fraction), at most one record per
  // stratum, largest strata first.
  const int target = round_half_up(static_cast<double>(records.size()) * fraction);
  std::vector<Quota*> order;
  for (auto& q : quotas) order.push_back(&q);
  std::stable_sort(order.begin(), order.end(), [](const Quota* a, const Quota* b) { return a->n > b->n; });
  for (Quota* q : order) {
    if (total == target) break;
    if (total > target && q->error > 1e-9 && q->take > 0) {
      --q->take;
      --total;
    } else if (total < target && q->error < -1e-9 && q->take < q->n) {
      ++q->take;
      ++total;
    }
  }

  std::vector<bool> to_bench(records.size(), false);
  for (const auto& q : quotas) {
    std::vector<std::size_t> members = strata[q.key];
    std::mt19937_64 rng(seed ^ std::stoull(prompt_hash(q.key), nullptr, 16));
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[rng() % i]);
    }
    for (int k = 0; k < q.take; ++k) to_bench[members[k]] = true;
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    DatasetRecord r = records[i];
    r.split = to_bench[i] ? Split::Bench : Split::Train;
    (to_bench[i] ? out.bench : out.train).push_back(std::move(r));
  }
  return out;
}

nlohmann::ordered_json record_to_json(const DatasetRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["sva"] = r.sva;
  j["normalized"] = r.normalized;
  j["svad"] = r.svad.prose;
  j["cot"] = cot_to_json(r.cot);
  j["tier"] = tier_name(r.profile.tier);
  j["category"] = r.profile.category;
  j["split"] = split_name(r.split);
  return j;
}

DatasetRecord record_from_json(const nlohmann::json& j) {
  DatasetRecord r = make_record(j.at("sva").get<std::string>(), SvadText{j.value("svad", std::string{})});
  if (j.contains("normalized") && j["normalized"].get<std::string>() != r.normalized) {
    throw std::invalid_argument("normalized field does not match the sva of record " + r.id);
  }
  if (j.contains("id") && j["id"].get<std::string>() != r.id) {
    throw std::invalid_argument("id field does not match the sva of record " + r.id);
  }
  if (j.contains("cot")) {
    // The file carries intent/construct only; keep the rebuilt paths when the steps agree.
    CotTrace stored = cot_from_json(j["cot"]);
    bool same = stored.steps.size() == r.cot.steps.size();
    for (std::size_t i = 0; same && i < stored.steps.size(); ++i) {
      same = stored.steps[i].intent == r.cot.steps[i].intent &&
             stored.steps[i].construct == r.cot.steps[i].construct;
    }
    if (!same) r.cot = std::move(stored);
  }
  if (j.contains("split")) {
    auto s = parse_split(j["split"].get<std::string>());
    if (!s) throw std::invalid_argument("unknown split '" + j["split"].get<std::string>() + "'");
    r.split = *s;
  }
  return r;
}

std::string to_jsonl(const std::vector<DatasetRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += record_to_json(r).dump();
    out += '\n';
  }
  return out;
}

std::vector<DatasetRecord> from_jsonl(std::string_view text) {
  std::vector<DatasetRecord> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_jsonl(const std::string& path, const std::vector<DatasetRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_jsonl(records);
}

std::vector<DatasetRecord> read_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_jsonl(ss.str());
}

}  // namespace svagen
