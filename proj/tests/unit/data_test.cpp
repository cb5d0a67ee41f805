#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "svagen/dataset.hpp"
#include "svagen/equiv.hpp"
#include "svagen/parser.hpp"
#include "svagen/printer.hpp"

using namespace svagen;

namespace {

DatasetRecord rec(const std::string& sva) { return make_record(sva, SvadText{"`a`"}); }

std::set<std::string> ids(const std::vector<DatasetRecord>& v) {
  std::set<std::string> out;
  for (const auto& r : v) out.insert(r.id);
  return out;
}

// Records spread over several strata with uneven sizes.
std::vector<DatasetRecord> uneven_corpus(int n, std::uint64_t seed) {
  static const char* kShapes[] = {"{x}", "{x} |-> b", "{x} |=> b", "{x} ##1 b", "{x} ##1 b |-> c"};
  std::mt19937_64 rng(seed);
  std::vector<DatasetRecord> out;
  for (int i = 0; i < n; ++i) {
    std::string body = kShapes[rng() % 5];
    body.replace(body.find("{x}"), 3, "s" + std::to_string(i));
    out.push_back(rec("@(posedge clk) " + body));
  }
  return out;
}

}  // namespace

TEST_CASE("record fields follow the sva") {
  auto r = rec("@(posedge clk) a&&b |->c");
  CHECK(r.normalized == "@(posedge clk) a && b |-> c");
  CHECK(r.id == record_id(r.normalized));
  CHECK(r.id.size() == 16);
  CHECK(r.stratum() == "D3/impl_ov");  // ImplOverlap -> And -> a
  CHECK(r.split == Split::Unassigned);
  CHECK_THROWS_AS(rec("@(posedge clk) a |->"), std::invalid_argument);
}

TEST_CASE("dedup") {
  auto d = dedup({rec("@(posedge clk) a|->b"), rec("@(posedge clk) a |-> b")});
  REQUIRE(d.size() == 1);
  CHECK(d[0].sva == "@(posedge clk) a|->b");
  CHECK(dedup({}).empty());
  CHECK(dedup({rec("@(posedge clk) a |-> b"), rec("@(negedge clk) a |-> b")}).size() == 2);
  CHECK(dedup({rec("@(posedge clk) a |-> b"), rec("@(posedge clk) disable iff (r) a |-> b")}).size() == 2);
  CHECK(dedup({rec("@(posedge clk) (a) |-> (b) // note"), rec("@(posedge clk) a |-> b")}).size() == 1);
}

TEST_CASE("dedup is idempotent and keeps unique ids") {
  std::vector<DatasetRecord> v;
  auto base = uneven_corpus(60, 3);
  for (int i = 0; i < 3; ++i) v.insert(v.end(), base.begin(), base.end());
  auto once = dedup(v);
  CHECK(once.size() == 60);
  CHECK(ids(once).size() == once.size());
  CHECK(to_jsonl(dedup(once)) == to_jsonl(once));
}

TEST_CASE("split examples") {
  std::vector<DatasetRecord> hundred;
  for (int i = 0; i < 100; ++i) hundred.push_back(rec("@(posedge clk) s" + std::to_string(i) + " |-> b"));
  auto s = stratified_split(hundred, 0.1, 7);
  CHECK(s.train.size() == 90);
  CHECK(s.bench.size() == 10);

  std::vector<DatasetRecord> ten(hundred.begin(), hundred.begin() + 10);
  auto t = stratified_split(ten, 0.1, 7);
  CHECK(t.train.size() == 9);
  CHECK(t.bench.size() == 1);

  auto again = stratified_split(hundred, 0.1, 7);
  CHECK(to_jsonl(again.bench) == to_jsonl(s.bench));
  CHECK(to_jsonl(again.train) == to_jsonl(s.train));
  CHECK(ids(stratified_split(hundred, 0.1, 8).bench) != ids(s.bench));

  auto empty = stratified_split({}, 0.1, 1);
  CHECK(empty.train.empty());
  CHECK(empty.bench.empty());
  CHECK_THROWS(stratified_split(hundred, 0.0, 1));
  CHECK_THROWS(stratified_split(hundred, 1.0, 1));
}

TEST_CASE("split partition and per-stratum quota over many sizes") {
  for (int n : {10, 11, 17, 33, 64, 99, 150, 401, 1000}) {
    auto corpus = uneven_corpus(n, static_cast<std::uint64_t>(n));
    for (double f : {0.1, 0.25}) {
      auto s = stratified_split(corpus, f, 42);
      auto tr = ids(s.train);
      auto be = ids(s.bench);
      CHECK(tr.size() + be.size() == corpus.size());
      for (const auto& id : be) CHECK(tr.count(id) == 0);
      for (const auto& r : s.train) CHECK(r.split == Split::Train);
      for (const auto& r : s.bench) CHECK(r.split == Split::Bench);

      std::map<std::string, int> total, bench;
      for (const auto& r : corpus) ++total[r.stratum()];
      for (const auto& r : s.bench) ++bench[r.stratum()];
      for (const auto& [k, c] : total) {
        CHECK_MESSAGE(std::abs(bench[k] - c * f) <= 1.0, k << " n=" << c << " f=" << f);
      }
      // The global total lands on round(N * f) whenever per-stratum slack allows.
      CHECK(static_cast<int>(s.bench.size()) == static_cast<int>(std::floor(n * f + 0.5 + 1e-9)));
    }
  }
}

TEST_CASE("jsonl round trip and field order") {
  auto r = rec("@(posedge clk) disable iff (rst) $rose(a) |-> ##[1:2] b");
  r.split = Split::Bench;
  const std::string line = to_jsonl({r});
  CHECK(line.rfind("{\"id\":", 0) == 0);
  const auto j = nlohmann::ordered_json::parse(line);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"id", "sva", "normalized", "svad", "cot", "tier", "category", "split"});
  CHECK(j["cot"][0].contains("intent"));
  CHECK(j["cot"][0].contains("construct"));
  auto back = from_jsonl(line);
  REQUIRE(back.size() == 1);
  CHECK(back[0].id == r.id);
  CHECK(back[0].split == Split::Bench);
  CHECK(back[0].cot == r.cot);
  CHECK(to_jsonl(back) == line);

  CHECK_THROWS_WITH(from_jsonl("\n{\"sva\": \"@(posedge clk) a |->\"}\n"), doctest::Contains("line 2"));
  auto bad_id = nlohmann::json::parse(line);
  bad_id["id"] = "0000000000000000";
  CHECK_THROWS(record_from_json(bad_id));
}

TEST_CASE("synthetic corpus contract") {
  SynthSpec spec;
  spec.counts = {{Tier::D1, 10}, {Tier::D2, 10}, {Tier::D3, 10}, {Tier::D4, 10}};
  auto corpus = synth_corpus(spec, 1);
  REQUIRE(corpus.size() == 40);
  std::map<Tier, int> per;
  for (const auto& r : corpus) {
    ++per[r.profile.tier];
    auto p = parse(r.sva);
    REQUIRE(p.ok());
    CHECK(normalize(*p.unit) == r.sva);
    CHECK(analyze(*p.unit).tier == r.profile.tier);
    CHECK(validate_svad(r.svad, r.profile).empty());
    equiv::BoundConfig cfg;
    cfg.cap = spec.max_trace_bits;
    CHECK_NOTHROW(equiv::plan_bounds(*p.unit, *p.unit, cfg));
  }
  for (Tier t : {Tier::D1, Tier::D2, Tier::D3, Tier::D4}) CHECK(per[t] == 10);
  CHECK(ids(corpus).size() == 40);
  CHECK(to_jsonl(synth_corpus(spec, 1)) == to_jsonl(corpus));
  CHECK(to_jsonl(synth_corpus(spec, 2)) != to_jsonl(corpus));
}

TEST_CASE("synthetic corpus honours families and weights") {
  SynthSpec spec;
  spec.counts = {{Tier::D3, 20}};
  spec.families = {"impl_nov", "delay"};
  spec.disable_probability = 0.0;
  for (const auto& r : synth_corpus(spec, 5)) {
    for (const auto& [k, n] : r.profile.op_counts) {
      CHECK((k == Kind::Atom || k == Kind::ImplNonOverlap || k == Kind::Delay || k == Kind::DelayRange));
    }
    CHECK(r.sva.find("disable") == std::string::npos);
  }

  SynthSpec weighted;
  weighted.counts = {{Tier::D2, 40}};
  weighted.category_weights = {{"impl_ov", 50.0}};
  int ov = 0;
  for (const auto& r : synth_corpus(weighted, 9)) ov += r.profile.category == "impl_ov";
  SynthSpec plain = weighted;
  plain.category_weights.clear();
  int ov_plain = 0;
  for (const auto& r : synth_corpus(plain, 9)) ov_plain += r.profile.category == "impl_ov";
  CHECK(ov > ov_plain);
}

TEST_CASE("unsatisfiable synthetic specs") {
  SynthSpec atoms;
  atoms.families = {};
  atoms.counts = {{Tier::D4, 1}};
  CHECK_THROWS_AS(synth_corpus(atoms, 1), SynthError);
  atoms.counts = {{Tier::D1, 1}};
  CHECK(synth_corpus(atoms, 1).size() == 1);

  SynthSpec sampling;
  sampling.families = {"sampling"};
  sampling.counts = {{Tier::D2, 1}};
  CHECK_THROWS_AS(synth_corpus(sampling, 1), SynthError);

  SynthSpec too_many;
  too_many.families = {};
  too_many.disable_probability = 0.0;
  too_many.counts = {{Tier::D1, 4}};  // only a, b, c exist
  CHECK_THROWS_AS(synth_corpus(too_many, 1), SynthError);

  SynthSpec unknown;
  unknown.families = {"teleport"};
  CHECK_THROWS_AS(synth_corpus(unknown, 1), SynthError);
}
