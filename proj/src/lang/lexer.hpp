#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "svagen/ast.hpp"

namespace svagen::lang {

enum class Tok {
  Ident,
  Int,
  SysIdent,  // $rose, $past, ...
  Dollar,    // bare '$' (range end)
  At,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Colon,
  Comma,
  Assign,
  Bang,
  AndAnd,
  OrOr,
  EqEq,
  NotEq,
  ImplOverlap,
  ImplNonOverlap,
  HashHash,
  RepStar,   // [*
  RepGoto,   // [->
  RepEq,     // [=
  KwPosedge,
  KwNegedge,
  KwDisable,
  KwIff,
  KwNot,
  KwAnd,
  KwOr,
  KwUntil,
  KwWithin,
  KwUnsupported,  // other SVA keywords outside the accepted fragment
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
  long value = 0;
};

/// Thrown for the first lexical or syntactic problem; carries the user-facing diagnostic.
class SyntaxError : public std::runtime_error {
 public:
  explicit SyntaxError(Diagnostic d) : std::runtime_error(d.message), diag_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

/// Tokenize the whole input; the final token is always Tok::End.
std::vector<Token> tokenize(std::string_view text);

}  // namespace svagen::lang
