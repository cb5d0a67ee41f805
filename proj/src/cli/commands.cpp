#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "svagen/annotator.hpp"
#include "svagen/ast_json.hpp"
#include "svagen/cli.hpp"
#include "svagen/dataset.hpp"
#include "svagen/genloop.hpp"
#include "svagen/harness.hpp"
#include "svagen/parser.hpp"
#include "svagen/printer.hpp"
#include "svagen/prompt.hpp"
#include "svagen/syntax_gate.hpp"

namespace svagen::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kNegative = 3;

struct Args {
  std::string input;
  std::string second;
  std::string out;
  std::string train_out;
  std::string bench_out;
  std::string out_dir;
  std::string svad;
  std::string diagnostics;
  std::string counts = "D1=10,D2=10,D3=10,D4=10";
  std::string families;
  std::vector<std::string> baselines;
  int max_trace_bits = 16;
  bool json = false;
  bool serial = false;
  bool each_line = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return read_text_file(path);
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string diagnostics_text(const std::vector<Diagnostic>& diags) {
  std::string s;
  for (const auto& d : diags) s += format_diagnostic(d) + "\n";
  return s;
}

// Parses a unit or reports its diagnostics; nullopt means the caller should fail.
std::optional<AssertionUnit> load_unit(const std::string& path, std::ostream& err) {
  ParseResult r = parse(read_input(path));
  if (!r.ok()) {
    err << path << ": " << diagnostics_text(r.diagnostics);
    return std::nullopt;
  }
  return r.unit;
}

std::string optional_template(const std::string& path) { return path.empty() ? std::string{} : read_text_file(path); }

std::unique_ptr<Provider> provider_for(const CliConfig& cfg) {
  if (cfg.provider.empty()) throw std::runtime_error("no provider configured (use --provider)");
  return make_provider(cfg.provider, cfg.http);
}

int cmd_parse(const Args& a, std::ostream& out, std::ostream& err) {
  ParseResult r = parse(read_input(a.input));
  if (!r.ok()) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& d : r.diagnostics) arr.push_back(diagnostic_to_json(d));
    out << arr.dump(2) << "\n";
    err << diagnostics_text(r.diagnostics);
    return kFailure;
  }
  out << unit_to_json(*r.unit).dump(2) << "\n";
  return kOk;
}

int cmd_normalize(const Args& a, std::ostream& out, std::ostream& err) {
  auto u = load_unit(a.input, err);
  if (!u) return kFailure;
  out << normalize(*u) << "\n";
  return kOk;
}

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : " ") + x;
  return out;
}

int cmd_analyze(const Args& a, std::ostream& out, std::ostream& err) {
  auto u = load_unit(a.input, err);
  if (!u) return kFailure;
  AnalysisProfile p = analyze(*u);
  if (a.json) {
    out << profile_to_json(p).dump(2) << "\n";
    return kOk;
  }
  out << "depth: " << p.depth << "\n"
      << "tier: " << tier_name(p.tier) << "\n"
      << "category: " << p.category << "\n"
      << "clock: " << edge_name(p.clock.edge) << " " << p.clock.signal << "\n"
      << "signals: " << join(p.signals) << "\n"
      << "disable_signals: " << join(p.disable_signals) << "\n"
      << "sysfuncs: " << join(p.sysfuncs) << "\n"
      << "local_vars: " << join(p.local_vars) << "\n";
  return kOk;
}

int cmd_check(const Args& a, std::ostream& out) {
  SyntaxVerdict v = check_syntax(read_input(a.input));
  if (a.json) {
    nlohmann::ordered_json j;
    j["status"] = v.passed() ? "pass" : "fail";
    if (v.passed()) {
      j["normalized"] = normalize(*v.unit);
    } else {
      j["label"] = label_name(classify_error(v.diagnostics));
      auto arr = nlohmann::ordered_json::array();
      for (const auto& d : v.diagnostics) arr.push_back(diagnostic_to_json(d));
      j["diagnostics"] = arr;
    }
    out << j.dump(2) << "\n";
  } else if (v.passed()) {
    out << "Pass\n" << normalize(*v.unit) << "\n";
  } else {
    out << "Fail " << label_name(classify_error(v.diagnostics)) << "\n" << diagnostics_text(v.diagnostics);
  }
  return v.passed() ? kOk : kNegative;
}

int cmd_classify(const Args& a, std::ostream& out, std::ostream& err) {
  std::vector<Diagnostic> diags;
  if (!a.diagnostics.empty()) {
    auto j = nlohmann::json::parse(read_input(a.diagnostics));
    if (j.is_object()) j = nlohmann::json::array({j});
    for (const auto& d : j) diags.push_back(diagnostic_from_json(d));
    if (diags.empty()) {
      err << "error: the diagnostics list is empty\n";
      return kFailure;
    }
  } else {
    if (a.input.empty()) {
      err << "error: give an SVA file or --diagnostics\n";
      return kUsage;
    }
    SyntaxVerdict v = check_syntax(read_input(a.input));
    if (v.passed()) {
      out << "Pass\n";
      return kOk;
    }
    diags = v.diagnostics;
  }
  out << label_name(classify_error(diags)) << "\n";
  return kOk;
}

int cmd_equiv(const Args& a, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  auto gen = load_unit(a.input, err);
  auto ref = load_unit(a.second, err);
  if (!gen || !ref) return kFailure;
  equiv::RelationResult r;
  try {
    r = a.serial ? equiv::check_relation_serial(*gen, *ref, cfg.bounds) : equiv::check_relation(*gen, *ref, cfg.bounds);
  } catch (const equiv::EquivError& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  if (a.json) {
    out << equiv::result_to_json(r).dump(2) << "\n";
  } else {
    out << equiv::relation_name(r.relation) << "\n";
    out << "L=" << r.length << " S=" << r.signal_count() << "\n";
    if (!r.note.empty()) out << r.note << "\n";
    if (r.witness_gen_only) out << "passes gen, fails ref:\n" << equiv::format_trace_table(*r.witness_gen_only);
    if (r.witness_ref_only) out << "passes ref, fails gen:\n" << equiv::format_trace_table(*r.witness_ref_only);
  }
  return r.relation == equiv::Relation::Equivalent ? kOk : kNegative;
}

int cmd_generate(const Args& a, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  SvadText svad{a.svad.empty() ? read_input(a.input) : a.svad};
  while (!svad.prose.empty() && (svad.prose.back() == '\n' || svad.prose.back() == '\r')) svad.prose.pop_back();
  auto provider = provider_for(cfg);
  GenOptions opts;
  opts.max_rounds = cfg.max_rounds;
  opts.prompt_template = optional_template(cfg.generation_template);
  try {
    GenOutcome o = generate_with_repair(svad, *provider, opts);
    write_output(a.out, outcome_to_json(o).dump(2) + "\n", out);
    return o.status == GenStatus::Passed ? kOk : kNegative;
  } catch (const GenerationError& e) {
    err << "error: " << e.what() << "\n";
    write_output(a.out, outcome_to_json(e.partial()).dump(2) + "\n", out);
    return kFailure;
  }
}

int cmd_annotate(const Args& a, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string provider_spec = cfg.provider.empty() ? "describe" : cfg.provider;
  std::unique_ptr<Provider> provider;
  if (provider_spec != "describe") provider = make_provider(provider_spec, cfg.http);
  AnnotateOptions opts;
  opts.retries = cfg.annotation_retries;
  opts.prompt_template = optional_template(cfg.annotation_template);

  auto annotate_one = [&](const AssertionUnit& u) {
    if (!provider) return SvadText{describe(u)};
    return annotate_svad(u, build_context(analyze(u)), build_cot(u), *provider, opts);
  };

  const std::string text = read_input(a.input);
  if (!a.each_line) {
    ParseResult r = parse(text);
    if (!r.ok()) {
      err << a.input << ": " << diagnostics_text(r.diagnostics);
      return kFailure;
    }
    nlohmann::ordered_json j;
    j["sva"] = normalize(*r.unit);
    j["context"] = build_context(analyze(*r.unit)).rendered;
    j["cot"] = cot_to_json(build_cot(*r.unit));
    j["svad"] = annotate_one(*r.unit).prose;
    write_output(a.out, j.dump(2) + "\n", out);
    return kOk;
  }
  std::vector<DatasetRecord> records;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ParseResult r = parse(line);
    if (!r.ok()) {
      err << a.input << ":" << line_no << ": " << diagnostics_text(r.diagnostics);
      return kFailure;
    }
    records.push_back(make_record(line, annotate_one(*r.unit)));
  }
  write_output(a.out, to_jsonl(records), out);
  return kOk;
}

std::vector<DatasetRecord> read_records(const std::string& path) { return from_jsonl(read_input(path)); }

int cmd_dedup(const Args& a, std::ostream& out, std::ostream& err) {
  auto in = read_records(a.input);
  auto kept = dedup(in);
  write_output(a.out, to_jsonl(kept), out);
  err << "kept " << kept.size() << " of " << in.size() << " records\n";
  return kOk;
}

int cmd_split(const Args& a, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  auto s = stratified_split(read_records(a.input), cfg.split_fraction, cfg.seed);
  if (a.train_out.empty() && a.bench_out.empty()) {
    out << to_jsonl(s.train) << to_jsonl(s.bench);
  } else {
    if (!a.train_out.empty()) write_output(a.train_out, to_jsonl(s.train), out);
    if (!a.bench_out.empty()) write_output(a.bench_out, to_jsonl(s.bench), out);
  }
  err << "train " << s.train.size() << ", bench " << s.bench.size() << "\n";
  return kOk;
}

SynthSpec synth_spec(const Args& a) {
  SynthSpec spec;
  std::istringstream parts(a.counts);
  std::string part;
  while (std::getline(parts, part, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw ConfigError("--counts entries look like D2=10, got '" + part + "'");
    try {
      spec.counts[parse_tier(part.substr(0, eq))] = std::stoi(part.substr(eq + 1));
    } catch (const std::invalid_argument&) {
      throw ConfigError("bad --counts entry '" + part + "'");
    }
  }
  if (!a.families.empty()) {
    spec.families.clear();
    std::istringstream fams(a.families);
    while (std::getline(fams, part, ',')) spec.families.insert(part);
  }
  spec.max_trace_bits = a.max_trace_bits;
  return spec;
}

int cmd_synth(const Args& a, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  auto corpus = synth_corpus(synth_spec(a), cfg.seed);
  write_output(a.out, to_jsonl(corpus), out);
  err << "wrote " << corpus.size() << " records\n";
  return kOk;
}

int cmd_bench_run(const Args& a, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  auto records = read_records(a.input);
  HarnessConfig hc;
  hc.bounds = cfg.bounds;
  hc.prompt_template = optional_template(cfg.generation_template);
  std::unique_ptr<Provider> provider;
  if (cfg.provider == "echo") {
    provider = std::make_unique<ReplayProvider>(echo_replay_table(records, hc.prompt_template));
  } else {
    provider = provider_for(cfg);
  }
  auto results = run_benchmark(records, *provider, hc);
  std::string jsonl;
  for (const auto& r : results) jsonl += sample_to_json(r).dump() + "\n";
  write_output(a.out, jsonl, out);
  for (const auto& s : compute_metrics(results)) {
    char line[160];
    if (s.ser) {
      std::snprintf(line, sizeof line, "%s N=%d SPR=%.1f SER=%.1f\n", s.tier.c_str(), s.n_total, s.spr * 100.0,
                    *s.ser * 100.0);
    } else {
      std::snprintf(line, sizeof line, "%s N=%d SPR=%.1f SER=-\n", s.tier.c_str(), s.n_total, s.spr * 100.0);
    }
    err << line;
  }
  return kOk;
}

int cmd_bench_report(const Args& a, const CliConfig& cfg, std::ostream& out) {
  std::vector<SampleResult> results;
  std::istringstream lines(read_input(a.input));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    results.push_back(sample_from_json(nlohmann::json::parse(line)));
  }
  Baselines baselines;
  for (const auto& spec : a.baselines) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) throw ConfigError("--baseline expects name=file, got '" + spec + "'");
    auto j = nlohmann::json::parse(read_text_file(spec.substr(eq + 1)));
    const auto& tiers = j.is_object() && j.contains("tiers") ? j["tiers"] : j;
    if (!tiers.is_array()) throw std::runtime_error(spec.substr(eq + 1) + ": expected a list of tier stats");
    std::vector<TierStats> stats;
    for (const auto& t : tiers) stats.push_back(tier_stats_from_json(t));
    baselines[spec.substr(0, eq)] = stats;
  }
  auto report = build_report(results, cfg.bounds, cfg.ser_threshold, cfg.min_support);
  auto rendered = render_report(report, baselines);
  if (a.out_dir.empty()) {
    out << rendered.json;
    return kOk;
  }
  std::filesystem::create_directories(a.out_dir);
  const std::filesystem::path dir(a.out_dir);
  write_output((dir / "report.json").string(), rendered.json, out);
  write_output((dir / "report.md").string(), rendered.markdown, out);
  write_output((dir / "syntax_attribution.csv").string(), rendered.syntax_csv, out);
  write_output((dir / "relation_attribution.csv").string(), rendered.relation_csv, out);
  out << rendered.markdown;
  return kOk;
}

std::string flag_name(const std::string& key) {
  std::string f = "--" + key;
  std::replace(f.begin(), f.end(), '_', '-');
  return f;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const std::map<std::string, std::string>& env) {
  CLI::App app{"SVA toolchain: parsing, dataset construction, generation with repair, and bounded equivalence checking",
               "svagen"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Expand all help");

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; also SVAGEN_CONFIG (default none)");
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_opts;
  for (const auto& [key, help] : config_keys()) {
    flag_opts[key] = app.add_option(flag_name(key), flag_values[key], help + "; env SVAGEN_" +
                                                                          [&] {
                                                                            std::string u = key;
                                                                            for (char& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                                                                            return u;
                                                                          }());
  }

  Args a;
  auto* parse_cmd = app.add_subcommand("parse", "Print the AST of one assertion as JSON");
  parse_cmd->add_option("input", a.input, "SVA file, or - for stdin")->required();
  auto* norm = app.add_subcommand("normalize", "Print the canonical form of one assertion");
  norm->add_option("input", a.input, "SVA file, or - for stdin")->required();
  auto* anal = app.add_subcommand("analyze", "Print depth, tier, category and signal sets");
  anal->add_option("input", a.input, "SVA file, or - for stdin")->required();
  anal->add_flag("--json", a.json, "Print the profile as JSON");
  auto* annot = app.add_subcommand(
      "annotate", "Describe an assertion in English (provider 'describe' is the built-in offline annotator)");
  annot->add_option("input", a.input, "SVA file, or - for stdin")->required();
  annot->add_flag("--each-line", a.each_line, "One assertion per line; write dataset records as JSONL");
  annot->add_option("-o,--out", a.out, "Output file (default stdout)");

  auto* dataset = app.add_subcommand("dataset", "Dataset operations");
  dataset->require_subcommand(1);
  auto* dd = dataset->add_subcommand("dedup", "Drop records whose normalized form was seen before");
  dd->add_option("input", a.input, "JSONL dataset")->required();
  dd->add_option("-o,--out", a.out, "Output JSONL (default stdout)");
  auto* ds = dataset->add_subcommand("split", "Stratified train/bench split by tier and category");
  ds->add_option("input", a.input, "JSONL dataset")->required();
  ds->add_option("--train-out", a.train_out, "Train JSONL");
  ds->add_option("--bench-out", a.bench_out, "Bench JSONL");
  auto* dsyn = dataset->add_subcommand("synth", "Generate a synthetic corpus");
  dsyn->add_option("--counts", a.counts, "Records per tier (default D1=10,D2=10,D3=10,D4=10)");
  dsyn->add_option("--families", a.families, "Comma-separated construct families (default all but local_var)");
  dsyn->add_option("--max-trace-bits", a.max_trace_bits, "Largest S x L a record may need (default 16)");
  dsyn->add_option("-o,--out", a.out, "Output JSONL (default stdout)");

  auto* check = app.add_subcommand("check", "Syntax gate; exit 3 when the assertion is rejected");
  check->add_option("input", a.input, "SVA file, or - for stdin")->required();
  check->add_flag("--json", a.json, "JSON verdict");
  auto* classify = app.add_subcommand("classify", "Error label for a rejected assertion or a diagnostics file");
  classify->add_option("input", a.input, "SVA file, or - for stdin");
  classify->add_option("--diagnostics", a.diagnostics, "JSON diagnostic or list of diagnostics");
  auto* eq = app.add_subcommand("equiv", "Bounded equivalence; exit 0 on Equivalent, 3 otherwise");
  eq->add_option("gen", a.input, "Generated SVA file")->required();
  eq->add_option("ref", a.second, "Reference SVA file")->required();
  eq->add_flag("--json", a.json, "JSON verdict with witnesses");
  eq->add_flag("--serial", a.serial, "Use the single-threaded reference kernel");
  auto* gen = app.add_subcommand("generate", "SVAD to SVA with syntax repair; exit 3 when rounds run out");
  gen->add_option("input", a.input, "SVAD text file, or - for stdin");
  gen->add_option("--svad", a.svad, "SVAD text given inline");
  gen->add_option("-o,--out", a.out, "Output JSON (default stdout)");

  auto* bench = app.add_subcommand("bench", "Benchmark runs and reports");
  bench->require_subcommand(1);
  auto* brun = bench->add_subcommand("run", "Single-pass generation and equivalence over a dataset");
  brun->add_option("dataset", a.input, "Bench JSONL")->required();
  brun->add_option("-o,--out", a.out, "Results JSONL (default stdout)");
  auto* brep = bench->add_subcommand("report", "Metrics, attribution matrices and baseline deltas");
  brep->add_option("results", a.input, "Results JSONL from bench run")->required();
  brep->add_option("--out-dir", a.out_dir, "Write report.json, report.md and CSV matrices here");
  brep->add_option("--baseline", a.baselines, "name=file with tier stats (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CliConfig cfg;
  try {
    std::string path = config_path;
    if (path.empty()) {
      auto it = env.find("SVAGEN_CONFIG");
      if (it != env.end()) path = it->second;
    }
    if (!path.empty()) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(read_text_file(path));
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
      } catch (const std::runtime_error& e) {
        throw ConfigError(e.what());
      }
      apply_file(cfg, j);
    }
    apply_env(cfg, env);
    for (const auto& [key, opt] : flag_opts) {
      if (opt->count() > 0) apply_setting(cfg, key, flag_values[key]);
    }
    validate(cfg);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(a, out, err);
    if (norm->parsed()) return cmd_normalize(a, out, err);
    if (anal->parsed()) return cmd_analyze(a, out, err);
    if (annot->parsed()) return cmd_annotate(a, cfg, out, err);
    if (dd->parsed()) return cmd_dedup(a, out, err);
    if (ds->parsed()) return cmd_split(a, cfg, out, err);
    if (dsyn->parsed()) return cmd_synth(a, cfg, out, err);
    if (check->parsed()) return cmd_check(a, out);
    if (classify->parsed()) return cmd_classify(a, out, err);
    if (eq->parsed()) return cmd_equiv(a, cfg, out, err);
    if (gen->parsed()) {
      if (a.input.empty() && a.svad.empty()) {
        err << "error: give an SVAD file or --svad\n";
        return kUsage;
      }
      return cmd_generate(a, cfg, out, err);
    }
    if (brun->parsed()) return cmd_bench_run(a, cfg, out, err);
    if (brep->parsed()) return cmd_bench_report(a, cfg, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  err << app.help();
  return kUsage;
}

}  // namespace svagen::cli
