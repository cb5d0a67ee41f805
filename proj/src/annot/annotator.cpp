#include "svagen/annotator.hpp"

#include <algorithm>
#include <set>

#include "svagen/printer.hpp"
#include "svagen/prompt.hpp"

namespace svagen {
namespace {

std::string tick(const std::string& name) { return "`" + name + "`"; }

std::string tick_list(const std::set<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += tick(n);
  }
  return out;
}

std::string bound_text(int v) { return v == kUnbounded ? "$" : std::to_string(v); }

std::string cycles(int n) { return std::to_string(n) + (n == 1 ? " cycle" : " cycles"); }

std::string times(int n) { return n == 1 ? "once" : std::to_string(n) + " times"; }

std::string ordinal(int n) {
  if (n == 1) return "first";
  const int t = n % 100;
  const char* suffix = (t >= 11 && t <= 13) ? "th" : n % 10 == 2 ? "nd" : n % 10 == 3 ? "rd" : "th";
  return std::to_string(n) + suffix;
}

bool pure_boolean(const AstNode& n) {
  bool pure = true;
  visit(n, [&](const AstNode& x) { pure = pure && is_boolean_kind(x.kind); });
  return pure;
}

std::optional<CotStep> step_for(const AstNode& n) {
  switch (n.kind) {
    case Kind::Delay:
    case Kind::SeqConcat: {
      const int k = n.kind == Kind::SeqConcat ? 1 : n.lower;
      if (k == 0) return CotStep{"in the same cycle", "##0", {}};
      return CotStep{"after " + cycles(k), "##" + std::to_string(k), {}};
    }
    case Kind::DelayRange: {
      const std::string c = "##[" + std::to_string(n.lower) + ":" + bound_text(n.upper) + "]";
      if (n.upper == kUnbounded) return CotStep{"at least " + cycles(n.lower) + " later", c, {}};
      return CotStep{"between " + std::to_string(n.lower) + " and " + std::to_string(n.upper) +
                         " cycles later",
                     c, {}};
    }
    case Kind::RepeatConsec:
      return CotStep{"holds for " + cycles(n.lower) + " in a row", "[*" + std::to_string(n.lower) + "]", {}};
    case Kind::RepeatRange: {
      const std::string c = "[*" + std::to_string(n.lower) + ":" + bound_text(n.upper) + "]";
      if (n.upper == kUnbounded) return CotStep{"holds for at least " + cycles(n.lower) + " in a row", c, {}};
      return CotStep{"holds for between " + std::to_string(n.lower) + " and " +
                         std::to_string(n.upper) + " consecutive cycles",
                     c, {}};
    }
    case Kind::RepeatGoto:
      return CotStep{"up to its " + ordinal(n.lower) + " occurrence, ending on it",
                     "[->" + std::to_string(n.lower) + "]", {}};
    case Kind::RepeatNonConsec:
      return CotStep{"occurs " + times(n.lower) + ", not necessarily consecutively",
                     "[=" + std::to_string(n.lower) + "]", {}};
    case Kind::ImplOverlap: return CotStep{"overlapping implication", "|->", {}};
    case Kind::ImplNonOverlap: return CotStep{"non-overlapping implication", "|=>", {}};
    case Kind::PropNot: return CotStep{"the property must not hold", "not", {}};
    case Kind::PropAnd: return CotStep{"both properties hold", "and", {}};
    case Kind::PropOr: return CotStep{"at least one property holds", "or", {}};
    case Kind::Until: return CotStep{"holds until the other one holds", "until", {}};
    case Kind::Within: return CotStep{"occurs within the span of another sequence", "within", {}};
    case Kind::SysFunc: {
      const std::string c = print_expr(n);
      if (n.name == "$rose") return CotStep{"rising edge of " + n.arg, c, {}};
      if (n.name == "$fell") return CotStep{"falling edge of " + n.arg, c, {}};
      if (n.name == "$stable") return CotStep{n.arg + " keeps its previous value", c, {}};
      return CotStep{"value of " + n.arg + " " + cycles(n.lower) + " earlier", c, {}};
    }
    case Kind::LocalVarDecl:
    case Kind::LocalVarAssign:
      return CotStep{"capture a value into local variable " + n.name, ", " + n.name + " =", {}};
    default: return std::nullopt;
  }
}

void collect_steps(const AstNode& n, std::vector<int>& path, std::vector<CotStep>& out) {
  if (auto s = step_for(n)) {
    s->path = path;
    out.push_back(std::move(*s));
  }
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    collect_steps(n.children[i], path, out);
    path.pop_back();
  }
}

// ---- prose rendering ----

std::string say_bool(const AstNode& n);

std::string say_bool_operand(const AstNode& n) {
  const bool simple = n.kind == Kind::Atom || n.kind == Kind::SysFunc || n.kind == Kind::Not;
  return simple ? say_bool(n) : "(" + say_bool(n) + ")";
}

std::string say_bool(const AstNode& n) {
  switch (n.kind) {
    case Kind::Atom: return tick(n.name) + " is high";
    case Kind::Not:
      if (n.children[0].kind == Kind::Atom) return tick(n.children[0].name) + " is low";
      return "not " + say_bool_operand(n.children[0]);
    case Kind::And: return say_bool_operand(n.children[0]) + " and " + say_bool_operand(n.children[1]);
    case Kind::Or: return say_bool_operand(n.children[0]) + " or " + say_bool_operand(n.children[1]);
    case Kind::RelOp:
      return "the truth of " + say_bool_operand(n.children[0]) +
             (n.name == "==" ? " equals that of " : " differs from that of ") +
             say_bool_operand(n.children[1]);
    case Kind::SysFunc:
      if (n.name == "$rose") return tick(n.arg) + " rises";
      if (n.name == "$fell") return tick(n.arg) + " falls";
      if (n.name == "$stable") return tick(n.arg) + " is unchanged from the previous cycle";
      return tick(n.arg) + " was high " + cycles(n.lower) + " earlier";
    default: return "?";
  }
}

std::string say_seq(const AstNode& n);

std::string say_seq_group(const AstNode& n) {
  if (is_boolean_kind(n.kind)) return say_bool(n);
  return "[" + say_seq(n) + "]";
}

std::string later(const AstNode& n) {
  if (n.kind == Kind::DelayRange) {
    if (n.upper == kUnbounded) return "at least " + cycles(n.lower) + " later";
    return "between " + std::to_string(n.lower) + " and " + std::to_string(n.upper) + " cycles later";
  }
  const int k = n.kind == Kind::SeqConcat ? 1 : n.lower;
  if (k == 0) return "in that same cycle";
  return cycles(k) + " later";
}

std::string say_seq(const AstNode& n) {
  switch (n.kind) {
    case Kind::Delay:
    case Kind::DelayRange:
    case Kind::SeqConcat:
      if (n.children.size() == 1) return later(n) + " " + say_seq_group(n.children[0]);
      return say_seq_group(n.children[0]) + ", then " + later(n) + " " + say_seq_group(n.children[1]);
    case Kind::RepeatConsec:
      return say_seq_group(n.children[0]) + " for " + cycles(n.lower) + " in a row";
    case Kind::RepeatRange:
      if (n.upper == kUnbounded) {
        return say_seq_group(n.children[0]) + " for at least " + cycles(n.lower) + " in a row";
      }
      return say_seq_group(n.children[0]) + " for between " + std::to_string(n.lower) + " and " +
             std::to_string(n.upper) + " consecutive cycles";
    case Kind::RepeatGoto:
      return "the " + ordinal(n.lower) + " time that " + say_bool(n.children[0]);
    case Kind::RepeatNonConsec:
      return say_bool(n.children[0]) + " " + times(n.lower) +
             ", not necessarily in consecutive cycles, and not again before the sequence ends";
    case Kind::Within:
      return say_seq_group(n.children[0]) + " occurring within " + say_seq_group(n.children[1]);
    case Kind::LocalVarDecl:
    case Kind::LocalVarAssign:
      return say_seq_group(n.children[0]) + ", recording the value of " + say_bool(n.children[1]) +
             " as " + n.name;
    default: return say_bool(n);
  }
}

std::string say_prop(const AstNode& n) {
  switch (n.kind) {
    case Kind::ImplOverlap:
      return "whenever " + say_seq(n.children[0]) + ", then in that same cycle " + say_prop(n.children[1]);
    case Kind::ImplNonOverlap:
      return "whenever " + say_seq(n.children[0]) + ", then from the next cycle " + say_prop(n.children[1]);
    case Kind::PropNot: return "it must not be the case that {" + say_prop(n.children[0]) + "}";
    case Kind::PropAnd: return "both {" + say_prop(n.children[0]) + "} and {" + say_prop(n.children[1]) + "}";
    case Kind::PropOr: return "either {" + say_prop(n.children[0]) + "} or {" + say_prop(n.children[1]) + "}";
    case Kind::Until: return "{" + say_prop(n.children[0]) + "} keeps holding until {" + say_prop(n.children[1]) + "}";
    default: return say_seq(n);
  }
}

}  // namespace

ConstraintContext build_context(const AnalysisProfile& profile) {
  ConstraintContext c;
  c.allowed_signals.assign(profile.signals.begin(), profile.signals.end());
  c.clock = std::string(edge_name(profile.clock.edge)) + " of " + tick(profile.clock.signal);
  if (!profile.disable_signals.empty()) {
    c.disable = "the check is disabled while the reset/disable condition over " +
                tick_list(profile.disable_signals) + " holds";
  }
  c.sysfuncs.assign(profile.sysfuncs.begin(), profile.sysfuncs.end());

  std::string r;
  if (!c.allowed_signals.empty()) {
    r += "Allowed signal names (use exactly these, wrapped in backticks): " + tick_list(profile.signals) + "\n";
  }
  r += "Clock: " + c.clock + "\n";
  if (c.disable) r += "Reset/disable: " + *c.disable + "\n";
  if (!c.sysfuncs.empty()) {
    r += "Sampling functions:";
    for (const auto& f : c.sysfuncs) r += " " + f;
    r += "\n";
  }
  c.rendered = std::move(r);
  return c;
}

CotTrace build_cot(const AssertionUnit& unit) {
  CotTrace t;
  if (pure_boolean(unit.body)) {
    t.steps.push_back(CotStep{"the condition holds in every cycle", print_expr(unit.body), {}});
    return t;
  }
  std::vector<int> path;
  collect_steps(unit.body, path, t.steps);
  return t;
}

std::string CotTrace::render() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    out += std::to_string(i + 1) + ". " + steps[i].intent + " -> " + steps[i].construct + "\n";
  }
  return out;
}

nlohmann::ordered_json cot_to_json(const CotTrace& cot) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : cot.steps) {
    nlohmann::ordered_json j;
    j["intent"] = s.intent;
    j["construct"] = s.construct;
    arr.push_back(std::move(j));
  }
  return arr;
}

CotTrace cot_from_json(const nlohmann::json& j) {
  CotTrace t;
  for (const auto& s : j) {
    t.steps.push_back(CotStep{s.at("intent").get<std::string>(), s.at("construct").get<std::string>(), {}});
  }
  return t;
}

std::vector<SvadViolation> validate_svad(const SvadText& svad, const AnalysisProfile& profile) {
  std::vector<SvadViolation> out;
  if (svad.prose.find_first_not_of(" \t\r\n") == std::string::npos) {
    out.push_back({"", "description is empty"});
    return out;
  }
  std::set<std::string> allowed = profile.signals;
  allowed.insert(profile.disable_signals.begin(), profile.disable_signals.end());
  allowed.insert(profile.clock.signal);

  std::size_t pos = 0;
  while ((pos = svad.prose.find('`', pos)) != std::string::npos) {
    const auto end = svad.prose.find('`', pos + 1);
    if (end == std::string::npos) {
      out.push_back({svad.prose.substr(pos + 1), "unterminated backtick"});
      break;
    }
    std::string token = svad.prose.substr(pos + 1, end - pos - 1);
    if (!allowed.contains(token)) {
      out.push_back({token, "`" + token + "` is not an allowed signal name"});
    }
    pos = end + 1;
  }
  return out;
}

std::string describe(const AssertionUnit& unit) {
  std::string out = "On every " + std::string(edge_name(unit.clock.edge)) + " of " + tick(unit.clock.signal);
  if (unit.has_disable()) {
    out += ", unless disabled because " + say_bool(unit.disable_expr());
  }
  const std::string body = say_prop(unit.body);
  out += ": " + body + ".";
  return out;
}

const std::string& default_annotation_template() {
  static const std::string t =
      "Describe the following SystemVerilog assertion in precise English.\n"
      "State its trigger, its required response, and the exact timing.\n"
      "Wrap every signal name in backticks and use no signal names other than those listed.\n"
      "\n"
      "{context}\n"
      "Construct breakdown:\n"
      "{cot}\n"
      "Assertion:\n"
      "{sva}\n";
  return t;
}

std::string render_annotation_prompt(const AssertionUnit& unit, const ConstraintContext& context,
                                     const CotTrace& cot, const std::string& tmpl) {
  return fill_template(tmpl.empty() ? default_annotation_template() : tmpl,
                       {{"context", context.rendered}, {"cot", cot.render()}, {"sva", normalize(unit)}});
}

SvadText annotate_svad(const AssertionUnit& unit, const ConstraintContext& context,
                       const CotTrace& cot, Provider& provider, const AnnotateOptions& opts) {
  const AnalysisProfile profile = analyze(unit);
  const std::string base = render_annotation_prompt(unit, context, cot, opts.prompt_template);
  std::string prompt = base;
  std::vector<SvadViolation> last;
  for (int attempt = 0; attempt <= opts.retries; ++attempt) {
    const std::string reply = provider.complete(prompt);
    const auto first = reply.find_first_not_of(" \t\r\n");
    const auto lastc = reply.find_last_not_of(" \t\r\n");
    SvadText svad{first == std::string::npos ? "" : reply.substr(first, lastc - first + 1)};
    last = validate_svad(svad, profile);
    if (last.empty()) return svad;
    prompt = base + "\nYour previous description was rejected:\n";
    for (const auto& v : last) prompt += "- " + v.message + "\n";
    prompt += "Rewrite it using only the allowed signal names.\n";
  }
  std::string what = "annotation rejected after " + std::to_string(opts.retries + 1) + " attempts:";
  for (const auto& v : last) what += " " + v.message;
  throw AnnotationError(what, last);
}

}  // namespace svagen
