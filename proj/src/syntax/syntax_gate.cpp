#include "svagen/syntax_gate.hpp"

#include <algorithm>
#include <stdexcept>

#include "svagen/parser.hpp"

namespace svagen {

std::string_view label_name(ErrorLabel l) {
  switch (l) {
    case ErrorLabel::StructureError: return "StructureError";
    case ErrorLabel::ImplicationOperatorError: return "ImplicationOperatorError";
    case ErrorLabel::TimingOperatorError: return "TimingOperatorError";
    case ErrorLabel::BooleanOperatorError: return "BooleanOperatorError";
    case ErrorLabel::SvaKeywordFunctionError: return "SvaKeywordFunctionError";
    case ErrorLabel::ConversionTypeCheckError: return "ConversionTypeCheckError";
    case ErrorLabel::OtherError: return "OtherError";
  }
  return "?";
}

std::optional<ErrorLabel> parse_label(std::string_view name) {
  for (auto l : kAllErrorLabels) {
    if (label_name(l) == name) return l;
  }
  return std::nullopt;
}

SyntaxVerdict check_syntax(std::string_view text) {
  ParseResult r = parse(text);
  return SyntaxVerdict{std::move(r.unit), std::move(r.diagnostics)};
}

namespace {

// Lexemes a diagnostic implicates: its token plus every single-quoted span of the message.
std::vector<std::string> implicated_lexemes(const Diagnostic& d) {
  std::vector<std::string> out;
  if (!d.token.empty()) out.push_back(d.token);
  const std::string& m = d.message;
  std::size_t pos = 0;
  while ((pos = m.find('\'', pos)) != std::string::npos) {
    std::size_t end = m.find('\'', pos + 1);
    if (end == std::string::npos) break;
    out.push_back(m.substr(pos + 1, end - pos - 1));
    pos = end + 1;
  }
  return out;
}

// The message with quoted spans removed, so quoted identifiers cannot trigger keyword matches.
std::string unquoted(const std::string& m) {
  std::string out;
  bool inside = false;
  for (char c : m) {
    if (c == '\'') {
      inside = !inside;
      out += ' ';
    } else if (!inside) {
      out += c;
    }
  }
  return out;
}

bool contains(std::string_view hay, std::string_view needle) {
  return hay.find(needle) != std::string_view::npos;
}

bool any_of_words(std::string_view text, std::initializer_list<std::string_view> words) {
  return std::any_of(words.begin(), words.end(), [&](auto w) { return contains(text, w); });
}

bool is_sva_keyword(std::string_view lex) {
  static constexpr std::string_view kWords[] = {
      "until",      "within",      "disable",     "iff",        "not",       "and",
      "or",         "throughout",  "intersect",   "first_match", "s_until",  "until_with",
      "s_until_with", "implies",   "nexttime",    "s_nexttime", "always",    "s_always",
      "eventually", "s_eventually", "property",   "sequence",   "assert",    "assume",
      "cover",      "endproperty", "endsequence", "accept_on",  "reject_on", "disable iff",
  };
  if (lex.size() > 1 && lex.front() == '$') return true;
  return std::find(std::begin(kWords), std::end(kWords), lex) != std::end(kWords);
}

bool is_implication(std::string_view lex) {
  return lex == "|->" || lex == "|=>" || lex == "|-" || lex == "|=" || lex == "->" || lex == "=>";
}

bool is_timing(std::string_view lex) {
  return lex.starts_with("##") || lex == "#" || lex.starts_with("[*") || lex.starts_with("[->") ||
         lex.starts_with("[=") || lex == "[+" || lex == "$";
}

bool is_boolean(std::string_view lex) {
  static constexpr std::string_view kOps[] = {"&&", "||", "!",  "==", "!=", "&",  "|",
                                              "<",  ">",  "<=", ">=", "~",  "^",  "===", "!=="};
  return std::find(std::begin(kOps), std::end(kOps), lex) != std::end(kOps);
}

}  // namespace

ErrorLabel classify_error(const std::vector<Diagnostic>& diags) {
  if (diags.empty()) throw std::invalid_argument("classify_error requires at least one diagnostic");
  const Diagnostic& d = diags.front();
  const auto lexemes = implicated_lexemes(d);
  const std::string msg = unquoted(d.message);
  auto any_lexeme = [&](auto pred) { return std::any_of(lexemes.begin(), lexemes.end(), pred); };

  if (any_lexeme(is_sva_keyword) ||
      any_of_words(msg, {"$rose", "$fell", "$stable", "$past", "system function",
                         "sampling function"})) {
    return ErrorLabel::SvaKeywordFunctionError;
  }
  if (any_lexeme(is_implication) || any_of_words(msg, {"|->", "|=>", "implication"})) {
    return ErrorLabel::ImplicationOperatorError;
  }
  if (any_lexeme(is_timing) ||
      any_of_words(msg, {"##", "[*", "[->", "[=", "delay", "repetition"})) {
    return ErrorLabel::TimingOperatorError;
  }
  if (any_lexeme(is_boolean) ||
      any_of_words(msg, {"&&", "||", "boolean operator", "relational operator"})) {
    return ErrorLabel::BooleanOperatorError;
  }
  if (any_of_words(msg, {"mismatch", "conversion", "type-check", "type check", "cast", "width",
                         "size"})) {
    return ErrorLabel::ConversionTypeCheckError;
  }
  if (any_of_words(msg, {"expected", "missing", "unbalanced", "end of input", "unterminated"})) {
    return ErrorLabel::StructureError;
  }
  return ErrorLabel::OtherError;
}

nlohmann::ordered_json diagnostic_to_json(const Diagnostic& d) {
  nlohmann::ordered_json j;
  j["line"] = d.line;
  j["col"] = d.col;
  j["token"] = d.token;
  j["message"] = d.message;
  return j;
}

Diagnostic diagnostic_from_json(const nlohmann::json& j) {
  Diagnostic d;
  d.line = j.value("line", 1);
  d.col = j.value("col", 1);
  d.token = j.value("token", std::string{});
  d.message = j.at("message").get<std::string>();
  if (d.message.empty()) throw std::invalid_argument("diagnostic message must be non-empty");
  return d;
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = std::to_string(d.line) + ":" + std::to_string(d.col) + ": " + d.message;
  if (!d.token.empty()) out += " [" + d.token + "]";
  return out;
}

}  // namespace svagen
