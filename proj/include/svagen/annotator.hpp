#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "svagen/analysis.hpp"
#include "svagen/ast.hpp"
#include "svagen/provider.hpp"

namespace svagen {

/// Prompt section listing what an annotator may mention.
struct ConstraintContext {
  std::vector<std::string> allowed_signals;  // sorted
  std::string clock;                         // e.g. "posedge of `clk`"
  std::optional<std::string> disable;
  std::vector<std::string> sysfuncs;
  std::string rendered;
};

ConstraintContext build_context(const AnalysisProfile& profile);

struct CotStep {
  std::string intent;
  std::string construct;
  std::vector<int> path;  // child indices from the body root

  bool operator==(const CotStep&) const = default;
};

struct CotTrace {
  std::vector<CotStep> steps;

  bool operator==(const CotTrace&) const = default;
  /// One "intent -> construct" line per step.
  std::string render() const;
};

/// Rule-based reasoning trace: one step per temporal or property operator, pre-order.
/// A purely boolean body yields a single step.
CotTrace build_cot(const AssertionUnit& unit);

nlohmann::ordered_json cot_to_json(const CotTrace& cot);
CotTrace cot_from_json(const nlohmann::json& j);

/// Natural-language description. Signal names are wrapped in backticks.
struct SvadText {
  std::string prose;
  std::string language = "en";

  bool operator==(const SvadText&) const = default;
};

struct SvadViolation {
  std::string token;
  std::string message;

  bool operator==(const SvadViolation&) const = default;
};

/// Empty result means the description is acceptable.
std::vector<SvadViolation> validate_svad(const SvadText& svad, const AnalysisProfile& profile);

/// Deterministic English rendering of a unit, used for synthetic records and as an
/// offline annotator.
std::string describe(const AssertionUnit& unit);

class AnnotationError : public std::runtime_error {
 public:
  AnnotationError(const std::string& what, std::vector<SvadViolation> violations)
      : std::runtime_error(what), violations_(std::move(violations)) {}
  const std::vector<SvadViolation>& violations() const { return violations_; }

 private:
  std::vector<SvadViolation> violations_;
};

struct AnnotateOptions {
  int retries = 2;
  std::string prompt_template;  // empty = built-in; needs {context}, {cot}, {sva}
};

const std::string& default_annotation_template();

std::string render_annotation_prompt(const AssertionUnit& unit, const ConstraintContext& context,
                                     const CotTrace& cot, const std::string& tmpl);

/// Asks `provider` for an SVAD and validates it; rejected attempts are retried with the
/// violations appended to the prompt. Throws AnnotationError when retries run out and
/// lets ProviderError through.
SvadText annotate_svad(const AssertionUnit& unit, const ConstraintContext& context,
                       const CotTrace& cot, Provider& provider, const AnnotateOptions& opts = {});

}  // namespace svagen
