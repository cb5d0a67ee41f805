#include "svagen/genloop.hpp"

#include "svagen/prompt.hpp"

namespace svagen {

const std::string& default_generation_template() {
  static const std::string t =
      "Write one SystemVerilog assertion property that matches the description below.\n"
      "Use explicit clocking, e.g. @(posedge clk), and only the signals named in the description.\n"
      "Answer with the property alone inside a single fenced code block:\n"
      "```systemverilog\n"
      "@(posedge clk) ...\n"
      "```\n"
      "\n"
      "Description:\n"
      "{svad}\n"
      "{feedback}";
  return t;
}

std::string render_prompt(const SvadText& svad, const std::optional<Prior>& prior,
                          const std::string& tmpl) {
  std::string feedback;
  if (prior) {
    feedback = "\nYour previous answer was:\n```\n" + prior->candidate +
               "\n```\nThe syntax checker rejected it:\n";
    for (const auto& d : prior->diagnostics) feedback += format_diagnostic(d) + "\n";
    feedback += "Fix these errors and answer again.\n";
  }
  return fill_template(tmpl.empty() ? default_generation_template() : tmpl,
                       {{"svad", svad.prose}, {"feedback", feedback}});
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::optional<std::string> extract_candidate(const std::string& response) {
  const auto open = response.find("```");
  if (open == std::string::npos) return std::nullopt;
  const auto body = response.find('\n', open + 3);
  if (body == std::string::npos) return std::nullopt;
  const auto close = response.find("```", body + 1);
  if (close == std::string::npos) return std::nullopt;
  return trim(std::string_view(response).substr(body + 1, close - body - 1));
}

Diagnostic missing_fence_diagnostic() {
  return Diagnostic{1, 1, "expected a fenced code block containing the assertion", ""};
}

std::string_view gen_status_name(GenStatus s) { return s == GenStatus::Passed ? "passed" : "exhausted"; }

nlohmann::ordered_json outcome_to_json(const GenOutcome& o) {
  nlohmann::ordered_json j;
  j["final"] = o.final_text;
  j["status"] = gen_status_name(o.status);
  j["rounds"] = o.rounds;
  auto log = nlohmann::ordered_json::array();
  for (const auto& r : o.log) {
    nlohmann::ordered_json e;
    e["candidate"] = r.candidate;
    auto diags = nlohmann::ordered_json::array();
    for (const auto& d : r.diagnostics) diags.push_back(diagnostic_to_json(d));
    e["diagnostics"] = diags;
    if (r.label) e["label"] = label_name(*r.label);
    log.push_back(e);
  }
  j["log"] = log;
  return j;
}

GenOutcome generate_with_repair(const SvadText& svad, Provider& provider, const GenOptions& opts) {
  if (opts.max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
  GenOutcome out;
  std::optional<Prior> prior;
  for (int round = 1; round <= opts.max_rounds; ++round) {
    GenRound r;
    r.prompt = render_prompt(svad, prior, opts.prompt_template);
    try {
      r.response = provider.complete(r.prompt);
    } catch (const ProviderError& e) {
      throw GenerationError(std::string("provider failed in round ") + std::to_string(round) + ": " +
                                e.what(),
                            out);
    }
    auto block = extract_candidate(r.response);
    r.candidate = block ? *block : trim(r.response);
    if (block) {
      SyntaxVerdict v = check_syntax(r.candidate);
      r.diagnostics = v.diagnostics;
    } else {
      r.diagnostics = {missing_fence_diagnostic()};
    }
    if (!r.diagnostics.empty()) r.label = classify_error(r.diagnostics);
    out.final_text = r.candidate;
    out.rounds = round;
    const bool passed = r.diagnostics.empty();
    if (!passed) prior = Prior{r.candidate, r.diagnostics};
    out.log.push_back(std::move(r));
    if (passed) {
      out.status = GenStatus::Passed;
      return out;
    }
  }
  out.status = GenStatus::Exhausted;
  return out;
}

}  // namespace svagen
