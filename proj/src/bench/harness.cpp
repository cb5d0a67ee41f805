#include "svagen/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "svagen/parser.hpp"

namespace svagen {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string pct(std::optional<double> v) { return v ? fmt("%.1f", *v * 100.0) : "-"; }

constexpr Tier kTiers[] = {Tier::D1, Tier::D2, Tier::D3, Tier::D4};

}  // namespace

nlohmann::ordered_json sample_to_json(const SampleResult& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["tier"] = tier_name(r.tier);
  j["category"] = r.category;
  j["reference"] = r.reference;
  j["candidate"] = r.candidate;
  j["syntax"] = r.syntax_pass ? "pass" : "fail";
  if (r.label) j["label"] = label_name(*r.label);
  if (r.relation) j["relation"] = equiv::relation_name(*r.relation);
  j["rounds"] = r.rounds;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

SampleResult sample_from_json(const nlohmann::json& j) {
  SampleResult r;
  r.id = j.at("id").get<std::string>();
  r.tier = parse_tier(j.at("tier").get<std::string>());
  r.category = j.value("category", std::string{});
  r.reference = j.value("reference", std::string{});
  r.candidate = j.value("candidate", std::string{});
  const std::string syntax = j.at("syntax").get<std::string>();
  if (syntax != "pass" && syntax != "fail") throw std::invalid_argument("syntax must be pass or fail");
  r.syntax_pass = syntax == "pass";
  if (j.contains("label")) {
    r.label = parse_label(j["label"].get<std::string>());
    if (!r.label) throw std::invalid_argument("unknown label " + j["label"].dump());
  }
  if (j.contains("relation")) {
    r.relation = equiv::parse_relation(j["relation"].get<std::string>());
    if (!r.relation) throw std::invalid_argument("unknown relation " + j["relation"].dump());
  }
  if (r.syntax_pass != r.relation.has_value() || r.syntax_pass == r.label.has_value()) {
    throw std::invalid_argument("sample " + r.id + ": relation must be present exactly when syntax passed");
  }
  r.rounds = j.value("rounds", 1);
  r.note = j.value("note", std::string{});
  return r;
}

std::vector<SampleResult> run_benchmark(const std::vector<DatasetRecord>& records, Provider& provider,
                                        const HarnessConfig& cfg) {
  std::vector<SampleResult> out(records.size());
  GenOptions gen;
  gen.max_rounds = 1;
  gen.prompt_template = cfg.prompt_template;
  const long n = static_cast<long>(records.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const DatasetRecord& rec = records[i];
    SampleResult& r = out[i];
    r.id = rec.id;
    r.tier = rec.profile.tier;
    r.category = rec.profile.category;
    r.reference = rec.sva;
    r.rounds = 1;
    std::vector<Diagnostic> diags;
    try {
      GenOutcome g = generate_with_repair(rec.svad, provider, gen);
      r.candidate = g.final_text;
      diags = g.log.back().diagnostics;
    } catch (const GenerationError& e) {
      diags = {Diagnostic{1, 1, e.what(), ""}};
    }
    if (!diags.empty()) {
      r.label = classify_error(diags);
      r.note = format_diagnostic(diags.front());
      continue;
    }
    r.syntax_pass = true;
    ParseResult gen_unit = parse(r.candidate);
    ParseResult ref_unit = parse(rec.sva);
    try {
      equiv::RelationResult rel = equiv::check_relation(*gen_unit.unit, *ref_unit.unit, cfg.bounds);
      r.relation = rel.relation;
      r.note = rel.note;
    } catch (const equiv::EquivError& e) {
      // A different clock cannot be equivalent; budget and config problems are inconclusive.
      r.relation = e.code() == equiv::EquivError::Code::ClockMismatch ? equiv::Relation::NoRelationship
                                                                      : equiv::Relation::Unsupported;
      r.note = e.what();
    }
  }
  std::sort(out.begin(), out.end(), [](const SampleResult& a, const SampleResult& b) { return a.id < b.id; });
  return out;
}

nlohmann::ordered_json tier_stats_to_json(const TierStats& s) {
  nlohmann::ordered_json j;
  j["tier"] = s.tier;
  j["n_total"] = s.n_total;
  j["n_pass"] = s.n_pass;
  j["n_eq"] = s.n_eq;
  j["spr"] = s.spr;
  j["ser"] = s.ser ? nlohmann::ordered_json(*s.ser) : nlohmann::ordered_json(nullptr);
  return j;
}

TierStats tier_stats_from_json(const nlohmann::json& j) {
  TierStats s;
  s.tier = j.at("tier").get<std::string>();
  s.n_total = j.value("n_total", 0);
  s.n_pass = j.value("n_pass", 0);
  s.n_eq = j.value("n_eq", 0);
  s.spr = j.value("spr", 0.0);
  if (j.contains("ser") && !j["ser"].is_null()) s.ser = j["ser"].get<double>();
  return s;
}

namespace {

TierStats stats_for(const std::string& name, const std::vector<const SampleResult*>& rs) {
  TierStats s;
  s.tier = name;
  for (const SampleResult* r : rs) {
    ++s.n_total;
    if (r->syntax_pass) ++s.n_pass;
    if (r->relation == equiv::Relation::Equivalent) ++s.n_eq;
  }
  s.spr = s.n_total ? static_cast<double>(s.n_pass) / s.n_total : 0.0;
  if (s.n_pass) s.ser = static_cast<double>(s.n_eq) / s.n_pass;
  return s;
}

std::map<Tier, std::vector<const SampleResult*>> by_tier(const std::vector<SampleResult>& results) {
  std::map<Tier, std::vector<const SampleResult*>> m;
  for (const auto& r : results) m[r.tier].push_back(&r);
  return m;
}

}  // namespace

std::vector<TierStats> compute_metrics(const std::vector<SampleResult>& results) {
  std::vector<TierStats> out;
  std::vector<const SampleResult*> all;
  for (const auto& [tier, rs] : by_tier(results)) {
    out.push_back(stats_for(std::string(tier_name(tier)), rs));
    all.insert(all.end(), rs.begin(), rs.end());
  }
  out.push_back(stats_for("overall", all));
  return out;
}

Attribution attribution(const std::vector<SampleResult>& results) {
  Attribution a;
  for (ErrorLabel l : kAllErrorLabels) a.syntax.columns.emplace_back(label_name(l));
  for (auto rel : kRelationColumns) a.relation.columns.emplace_back(equiv::relation_name(rel));
  for (const auto& [tier, rs] : by_tier(results)) {
    const std::string name(tier_name(tier));
    std::vector<double> syn(kAllErrorLabels.size(), 0.0);
    std::vector<double> rel(kRelationColumns.size(), 0.0);
    int decided = 0;
    for (const SampleResult* r : rs) {
      if (r->label) syn[static_cast<std::size_t>(*r->label)] += 1.0;
      if (!r->relation) continue;
      if (*r->relation == equiv::Relation::Unsupported) {
        ++a.unsupported[name];
        continue;
      }
      ++decided;
      auto it = std::find(kRelationColumns.begin(), kRelationColumns.end(), *r->relation);
      rel[static_cast<std::size_t>(it - kRelationColumns.begin())] += 1.0;
    }
    for (double& v : syn) v /= static_cast<double>(rs.size());
    a.syntax.rows.emplace_back(name, syn);
    if (decided > 0) {
      for (double& v : rel) v /= decided;
      a.relation.rows.emplace_back(name, rel);
    }
  }
  return a;
}

std::vector<RefinementWeight> refinement_signal(const std::vector<SampleResult>& results,
                                                double ser_threshold, int min_support) {
  if (!(ser_threshold > 0.0 && ser_threshold <= 1.0)) throw std::invalid_argument("SER threshold must be in (0, 1]");
  if (min_support < 1) throw std::invalid_argument("min_support must be at least 1");
  struct Counts {
    int total = 0, pass = 0, eq = 0;
  };
  std::map<std::string, Counts> cats;
  for (const auto& r : results) {
    Counts& c = cats[r.category];
    ++c.total;
    if (r.syntax_pass) ++c.pass;
    if (r.relation == equiv::Relation::Equivalent) ++c.eq;
  }
  std::vector<RefinementWeight> out;
  for (const auto& [cat, c] : cats) {
    if (c.total < min_support) continue;
    const double ser = c.pass ? static_cast<double>(c.eq) / c.pass : 0.0;
    if (ser >= ser_threshold) continue;
    const double m = std::clamp(ser_threshold / std::max(ser, 1e-6), 1.0, 4.0);
    out.push_back({cat, c.total, ser, m});
  }
  return out;
}

BenchmarkReport build_report(const std::vector<SampleResult>& results, const equiv::BoundConfig& bounds,
                             double ser_threshold, int min_support) {
  BenchmarkReport r;
  r.tiers = compute_metrics(results);
  r.attr = attribution(results);
  r.bounds = bounds;
  r.refinement = refinement_signal(results, ser_threshold, min_support);
  return r;
}

double round1(double x) {
  const double scaled = x * 10.0;
  // Values such as 22.649999... stand for a .x5 boundary in the input data.
  const double r = std::round(scaled + (scaled >= 0 ? 1e-9 : -1e-9));
  return r / 10.0;
}

double mean_delta_pp(const std::vector<double>& deltas) {
  if (deltas.empty()) throw std::invalid_argument("no deltas to average");
  double sum = 0.0;
  for (double d : deltas) sum += d;
  return round1(sum / static_cast<double>(deltas.size()));
}

namespace {

nlohmann::ordered_json matrix_json(const Matrix& m) {
  nlohmann::ordered_json j;
  j["columns"] = m.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::object();
  for (const auto& [tier, vals] : m.rows) rows[tier] = vals;
  j["rows"] = rows;
  return j;
}

std::string matrix_csv(const Matrix& m) {
  std::string out = "tier";
  for (const auto& c : m.columns) out += "," + c;
  out += "\n";
  for (const auto& [tier, vals] : m.rows) {
    out += tier;
    for (double v : vals) out += "," + fmt("%.6f", v);
    out += "\n";
  }
  return out;
}

std::string matrix_md(const Matrix& m) {
  std::string out = "| Tier |";
  for (const auto& c : m.columns) out += " " + c + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < m.columns.size(); ++i) out += "---|";
  out += "\n";
  for (const auto& [tier, vals] : m.rows) {
    out += "| " + tier + " |";
    for (double v : vals) out += " " + fmt("%.1f", v * 100.0) + " |";
    out += "\n";
  }
  return out;
}

const TierStats* find_tier(const std::vector<TierStats>& v, std::string_view name) {
  for (const auto& s : v) {
    if (s.tier == name) return &s;
  }
  return nullptr;
}

struct BaselineDelta {
  std::vector<std::pair<std::string, double>> per_tier;  // raw pp
  std::optional<double> mean_d2_d4;                     // rounded
};

BaselineDelta deltas_against(const std::vector<TierStats>& ours, const std::vector<TierStats>& base) {
  BaselineDelta d;
  std::vector<double> upper;
  for (Tier t : kTiers) {
    const std::string name(tier_name(t));
    const TierStats* a = find_tier(ours, name);
    const TierStats* b = find_tier(base, name);
    if (!a || !b || !a->ser || !b->ser) continue;
    const double pp = (*a->ser - *b->ser) * 100.0;
    d.per_tier.emplace_back(name, pp);
    if (t != Tier::D1) upper.push_back(pp);
  }
  if (!upper.empty()) d.mean_d2_d4 = mean_delta_pp(upper);
  return d;
}

}  // namespace

RenderedReport render_report(const BenchmarkReport& report, const Baselines& baselines) {
  RenderedReport out;
  nlohmann::ordered_json j;
  j["bounds"] = {{"length", report.bounds.length},
                 {"max_signals", report.bounds.max_signals},
                 {"cap", report.bounds.cap}};
  auto tiers = nlohmann::ordered_json::array();
  for (const auto& s : report.tiers) tiers.push_back(tier_stats_to_json(s));
  j["tiers"] = tiers;
  j["syntax_attribution"] = matrix_json(report.attr.syntax);
  j["relation_attribution"] = matrix_json(report.attr.relation);
  nlohmann::ordered_json unsup = nlohmann::ordered_json::object();
  for (const auto& [tier, n] : report.attr.unsupported) unsup[tier] = n;
  j["unsupported"] = unsup;
  auto refine = nlohmann::ordered_json::array();
  for (const auto& w : report.refinement) {
    nlohmann::ordered_json e;
    e["category"] = w.category;
    e["support"] = w.support;
    e["ser"] = w.ser;
    e["multiplier"] = w.multiplier;
    refine.push_back(e);
  }
  j["refinement"] = refine;

  std::string md = "# Benchmark report\n\n";
  md += "Trace length: " + (report.bounds.length ? std::to_string(report.bounds.length) : std::string("span + 2")) +
        ", S x L cap: " + std::to_string(report.bounds.cap) + "\n\n";
  md += "| Tier | N_total | N_pass | N_eq | SPR (%) | SER (%) |\n|---|---|---|---|---|---|\n";
  for (const auto& s : report.tiers) {
    md += "| " + s.tier + " | " + std::to_string(s.n_total) + " | " + std::to_string(s.n_pass) + " | " +
          std::to_string(s.n_eq) + " | " + pct(s.spr) + " | " + pct(s.ser) + " |\n";
  }
  md += "\n## Syntax errors (% of all samples)\n\n" + matrix_md(report.attr.syntax);
  md += "\n## Relations (% of syntax-passed samples, Unsupported excluded)\n\n" + matrix_md(report.attr.relation);
  if (!report.attr.unsupported.empty()) {
    md += "\nUnsupported:";
    for (const auto& [tier, n] : report.attr.unsupported) md += " " + tier + "=" + std::to_string(n);
    md += "\n";
  }
  if (!report.refinement.empty()) {
    md += "\n## Refinement weights\n\n| Category | Support | SER (%) | Multiplier |\n|---|---|---|---|\n";
    for (const auto& w : report.refinement) {
      md += "| " + w.category + " | " + std::to_string(w.support) + " | " + pct(w.ser) + " | " +
            fmt("%.2f", w.multiplier) + " |\n";
    }
  }

  nlohmann::ordered_json base_json = nlohmann::ordered_json::object();
  for (const auto& [name, stats] : baselines) {
    BaselineDelta d = deltas_against(report.tiers, stats);
    nlohmann::ordered_json bj;
    nlohmann::ordered_json per = nlohmann::ordered_json::object();
    for (const auto& [tier, pp] : d.per_tier) per[tier] = pp;
    bj["ser_delta_pp"] = per;
    bj["mean_d2_d4_pp"] = d.mean_d2_d4 ? nlohmann::ordered_json(*d.mean_d2_d4) : nlohmann::ordered_json(nullptr);
    base_json[name] = bj;

    md += "\n## Against " + name + "\n\n| Tier | SER (%) | " + name + " SER (%) | Delta (pp) |\n|---|---|---|---|\n";
    for (const auto& [tier, pp] : d.per_tier) {
      md += "| " + tier + " | " + pct(find_tier(report.tiers, tier)->ser) + " | " + pct(find_tier(stats, tier)->ser) +
            " | " + fmt("%+.1f", round1(pp)) + " |\n";
    }
    if (d.mean_d2_d4) md += "\nMean SER delta over D2-D4: " + fmt("%+.1f", *d.mean_d2_d4) + " pp\n";
  }
  if (!baselines.empty()) j["baselines"] = base_json;

  out.json = j.dump(2) + "\n";
  out.markdown = md;
  out.syntax_csv = matrix_csv(report.attr.syntax);
  out.relation_csv = matrix_csv(report.attr.relation);
  return out;
}

std::map<std::string, std::vector<std::string>> echo_replay_table(const std::vector<DatasetRecord>& records,
                                                                  const std::string& prompt_template) {
  std::map<std::string, std::vector<std::string>> table;
  for (const auto& r : records) {
    const std::string reply = "```systemverilog\n" + r.sva + "\n```\n";
    auto& list = table[prompt_hash(render_prompt(r.svad, std::nullopt, prompt_template))];
    if (list.empty()) {
      list.push_back(reply);
    } else if (list.front() != reply) {
      throw std::invalid_argument("two records share the prompt of record " + r.id);
    }
  }
  return table;
}

}  // namespace svagen
