#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "svagen/annotator.hpp"
#include "svagen/provider.hpp"
#include "svagen/syntax_gate.hpp"

namespace svagen {

/// A rejected candidate and the checker output it produced.
struct Prior {
  std::string candidate;
  std::vector<Diagnostic> diagnostics;
};

const std::string& default_generation_template();

/// Fills {svad} and {feedback}. Without a prior the feedback block is empty; with one
/// it carries the candidate and every diagnostic line verbatim.
std::string render_prompt(const SvadText& svad, const std::optional<Prior>& prior,
                          const std::string& tmpl = {});

/// Contents of the first fenced code block (``` with an optional language tag),
/// trimmed. nullopt when the response has no complete fence.
std::optional<std::string> extract_candidate(const std::string& response);

/// Diagnostic used when a response carries no fenced block.
Diagnostic missing_fence_diagnostic();

enum class GenStatus { Passed, Exhausted };

std::string_view gen_status_name(GenStatus s);

struct GenRound {
  std::string prompt;
  std::string response;
  std::string candidate;  // extracted block, or the raw response when there is none
  std::vector<Diagnostic> diagnostics;
  std::optional<ErrorLabel> label;  // set when the candidate failed
};

struct GenOutcome {
  std::string final_text;
  GenStatus status = GenStatus::Exhausted;
  int rounds = 0;
  std::vector<GenRound> log;
};

nlohmann::ordered_json outcome_to_json(const GenOutcome& o);

class GenerationError : public std::runtime_error {
 public:
  GenerationError(const std::string& what, GenOutcome partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const GenOutcome& partial() const { return partial_; }

 private:
  GenOutcome partial_;
};

struct GenOptions {
  int max_rounds = 3;
  std::string prompt_template;  // empty = built-in
};

/// generate -> check_syntax until a candidate passes or max_rounds calls were made.
/// A ProviderError aborts with GenerationError carrying the rounds done so far.
GenOutcome generate_with_repair(const SvadText& svad, Provider& provider, const GenOptions& opts = {});

}  // namespace svagen
