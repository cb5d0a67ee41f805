#include "svagen/parser.hpp"

#include <set>
#include <string>

#include "lexer.hpp"

namespace svagen {
namespace {

using lang::SyntaxError;
using lang::Tok;
using lang::Token;

// Operand classes, ordered so that Bool is usable wherever Seq is, and Seq wherever Prop is.
enum class Cls { Bool = 0, Seq = 1, Prop = 2 };

struct Parsed {
  AstNode node;
  Cls cls = Cls::Bool;
  Token first;
};

// Binding strength; larger binds tighter.
constexpr int kPrecNot = 0;
constexpr int kPrecAndOr = 1;
constexpr int kPrecImpl = 2;
constexpr int kPrecUntil = 3;
constexpr int kPrecWithin = 4;
constexpr int kPrecConcat = 5;
constexpr int kPrecRepeat = 6;
constexpr int kPrecLogOr = 7;
constexpr int kPrecLogAnd = 8;
constexpr int kPrecEquality = 9;
constexpr int kPrecBang = 10;

int infix_prec(Tok t) {
  switch (t) {
    case Tok::KwAnd:
    case Tok::KwOr: return kPrecAndOr;
    case Tok::ImplOverlap:
    case Tok::ImplNonOverlap: return kPrecImpl;
    case Tok::KwUntil: return kPrecUntil;
    case Tok::KwWithin: return kPrecWithin;
    case Tok::HashHash: return kPrecConcat;
    case Tok::RepStar:
    case Tok::RepGoto:
    case Tok::RepEq: return kPrecRepeat;
    case Tok::OrOr: return kPrecLogOr;
    case Tok::AndAnd: return kPrecLogAnd;
    case Tok::EqEq:
    case Tok::NotEq: return kPrecEquality;
    default: return -1;
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  AssertionUnit parse_unit() {
    AssertionUnit unit;
    expect_clock(unit);
    if (peek().kind == Tok::KwDisable) {
      advance();
      if (peek().kind != Tok::KwIff) fail_here("expected 'iff' after 'disable'");
      advance();
      if (peek().kind != Tok::LParen) fail_here("expected '(' after 'disable iff'");
      advance();
      Parsed cond = parse_expr(kPrecNot);
      if (cond.cls != Cls::Bool) {
        type_error(cond, "type mismatch: disable condition must be a boolean expression");
      }
      expect_close(Tok::RParen, "expected ')' to close the disable condition");
      unit.disable.push_back(std::move(cond.node));
    }
    if (peek().kind == Tok::End) fail_here("expected a property after the clocking event");
    Parsed body = parse_expr(kPrecNot);
    if (peek().kind != Tok::End) {
      fail_here("unexpected '" + peek().text + "' after end of property");
    }
    unit.body = std::move(body.node);
    return unit;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> bound_locals_;

  const Token& peek(std::size_t off = 0) const {
    return toks_[std::min(pos_ + off, toks_.size() - 1)];
  }
  const Token& prev() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }
  Token advance() {
    Token t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail_at(const Token& t, std::string message) {
    throw SyntaxError(Diagnostic{t.line, t.col, std::move(message), t.text});
  }
  [[noreturn]] void fail_here(std::string message) { fail_at(peek(), std::move(message)); }
  [[noreturn]] void type_error(const Parsed& p, std::string message) {
    fail_at(p.first, std::move(message));
  }

  void expect_close(Tok kind, const std::string& message) {
    if (peek().kind != kind) {
      if (peek().kind == Tok::End) fail_here(message + " before end of input");
      fail_here(message + ", found '" + peek().text + "'");
    }
    advance();
  }

  void expect_clock(AssertionUnit& unit) {
    if (peek().kind != Tok::At) fail_here("expected clocking event '@(' at start of assertion");
    advance();
    if (peek().kind != Tok::LParen) fail_here("expected '(' after '@'");
    advance();
    if (peek().kind == Tok::KwPosedge) {
      unit.clock.edge = Edge::Posedge;
    } else if (peek().kind == Tok::KwNegedge) {
      unit.clock.edge = Edge::Negedge;
    } else {
      fail_here("expected 'posedge' or 'negedge' in clocking event");
    }
    advance();
    if (peek().kind != Tok::Ident) fail_here("expected clock signal name in clocking event");
    unit.clock.signal = advance().text;
    expect_close(Tok::RParen, "expected ')' to close clocking event");
  }

  static const char* cls_name(Cls c) {
    switch (c) {
      case Cls::Bool: return "boolean expression";
      case Cls::Seq: return "sequence";
      case Cls::Prop: return "property";
    }
    return "?";
  }

  void require(const Parsed& p, Cls at_most) {
    if (p.cls <= at_most) return;
    type_error(p, std::string("type mismatch: ") + cls_name(p.cls) + " operand where a " +
                      cls_name(at_most) + " is required");
  }

  long expect_int(const std::string& message) {
    if (peek().kind != Tok::Int) {
      if (peek().kind == Tok::End) fail_here(message + " before end of input");
      fail_here(message);
    }
    return advance().value;
  }

  // Parses "INT ':' (INT | '$') ']'" after an opening bracket; returns {lower, upper}.
  std::pair<int, int> range_tail(const Token& opener, const std::string& what) {
    int lower = static_cast<int>(expect_int("expected lower bound in " + what));
    if (peek().kind != Tok::Colon) fail_here("expected ':' in " + what);
    advance();
    int upper = 0;
    if (peek().kind == Tok::Dollar) {
      advance();
      upper = kUnbounded;
    } else {
      upper = static_cast<int>(expect_int("expected upper bound in " + what));
    }
    expect_close(Tok::RBracket, "expected ']' to close " + what);
    if (upper != kUnbounded && lower > upper) {
      fail_at(opener, "lower bound exceeds upper bound");
    }
    return {lower, upper};
  }

  // After '##': either INT or '[' range ']'. Returns a node shell holding the bounds.
  AstNode delay_shell(const Token& hash) {
    AstNode shell;
    if (peek().kind == Tok::Int) {
      shell.kind = Kind::Delay;
      shell.lower = shell.upper = static_cast<int>(advance().value);
      return shell;
    }
    if (peek().kind == Tok::LBracket) {
      Token opener = advance();
      opener.text = "##[";
      opener.line = hash.line;
      opener.col = hash.col;
      auto [lo, hi] = range_tail(opener, "delay range");
      shell.kind = Kind::DelayRange;
      shell.lower = lo;
      shell.upper = hi;
      return shell;
    }
    if (peek().kind == Tok::End) {
      fail_here("expected delay bound");
    }
    fail_here("expected delay bound after '##', found '" + peek().text + "'");
  }

  Parsed parse_expr(int min_prec) {
    Parsed lhs = parse_prefix();
    for (;;) {
      const Token op = peek();
      const int p = infix_prec(op.kind);
      if (p < 0 || p < min_prec) break;
      if (p == kPrecRepeat) {
        lhs = parse_postfix(std::move(lhs));
        continue;
      }
      advance();
      if (op.kind == Tok::HashHash) {
        AstNode shell = delay_shell(op);
        Parsed rhs = parse_operand(kPrecConcat + 1, "expected a sequence after delay '##'");
        require(lhs, Cls::Seq);
        require(rhs, Cls::Seq);
        shell.children.push_back(std::move(lhs.node));
        shell.children.push_back(std::move(rhs.node));
        lhs = Parsed{std::move(shell), Cls::Seq, lhs.first};
        continue;
      }
      const bool right_assoc = p == kPrecImpl || p == kPrecUntil;
      Parsed rhs = parse_operand(right_assoc ? p : p + 1,
                                 "expected an expression after '" + op.text + "'");
      lhs = combine(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  // parse_expr with a targeted message when the operand is missing entirely.
  Parsed parse_operand(int min_prec, const std::string& missing) {
    if (peek().kind == Tok::End) fail_here(missing);
    return parse_expr(min_prec);
  }

  Parsed combine(const Token& op, Parsed lhs, Parsed rhs) {
    Kind kind{};
    Cls cls = Cls::Prop;
    switch (op.kind) {
      case Tok::KwAnd: kind = Kind::PropAnd; break;
      case Tok::KwOr: kind = Kind::PropOr; break;
      case Tok::KwUntil: kind = Kind::Until; break;
      case Tok::ImplOverlap:
      case Tok::ImplNonOverlap:
        kind = op.kind == Tok::ImplOverlap ? Kind::ImplOverlap : Kind::ImplNonOverlap;
        require(lhs, Cls::Seq);
        break;
      case Tok::KwWithin:
        kind = Kind::Within;
        cls = Cls::Seq;
        require(lhs, Cls::Seq);
        require(rhs, Cls::Seq);
        break;
      case Tok::OrOr:
      case Tok::AndAnd:
      case Tok::EqEq:
      case Tok::NotEq:
        kind = op.kind == Tok::OrOr ? Kind::Or : op.kind == Tok::AndAnd ? Kind::And : Kind::RelOp;
        cls = Cls::Bool;
        require(lhs, Cls::Bool);
        require(rhs, Cls::Bool);
        break;
      default:
        fail_at(op, "unexpected '" + op.text + "'");
    }
    AstNode node = AstNode::binary(kind, std::move(lhs.node), std::move(rhs.node));
    if (kind == Kind::RelOp) node.name = op.text;
    return Parsed{std::move(node), cls, lhs.first};
  }

  Parsed parse_postfix(Parsed lhs) {
    const Token op = advance();
    AstNode node;
    if (op.kind == Tok::RepStar) {
      require(lhs, Cls::Seq);
      int lo = static_cast<int>(expect_int("expected repetition count after '[*'"));
      if (peek().kind == Tok::Colon) {
        advance();
        int hi = 0;
        if (peek().kind == Tok::Dollar) {
          advance();
          hi = kUnbounded;
        } else {
          hi = static_cast<int>(expect_int("expected upper repetition bound after ':'"));
        }
        expect_close(Tok::RBracket, "expected ']' to close repetition");
        if (hi != kUnbounded && lo > hi) fail_at(op, "lower bound exceeds upper bound");
        node.kind = Kind::RepeatRange;
        node.lower = lo;
        node.upper = hi;
      } else {
        expect_close(Tok::RBracket, "expected ']' to close repetition");
        node.kind = Kind::RepeatConsec;
        node.lower = node.upper = lo;
      }
    } else {
      require(lhs, Cls::Bool);
      int n = static_cast<int>(
          expect_int("expected repetition count after '" + op.text + "'"));
      expect_close(Tok::RBracket, "expected ']' to close repetition");
      node.kind = op.kind == Tok::RepGoto ? Kind::RepeatGoto : Kind::RepeatNonConsec;
      node.lower = node.upper = n;
    }
    if (node.lower < 1) fail_at(op, "repetition count must be at least 1 in '" + op.text + "'");
    node.children.push_back(std::move(lhs.node));
    return Parsed{std::move(node), Cls::Seq, lhs.first};
  }

  Parsed parse_prefix() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Ident:
        advance();
        return Parsed{AstNode::atom(t.text), Cls::Bool, t};
      case Tok::SysIdent:
        return parse_sysfunc();
      case Tok::Int:
        fail_here("type mismatch: integer literal '" + t.text +
                  "' used where a 1-bit signal is required");
      case Tok::Bang: {
        advance();
        Parsed operand = parse_operand(kPrecBang, "expected an expression after '!'");
        require(operand, Cls::Bool);
        return Parsed{AstNode::unary(Kind::Not, std::move(operand.node)), Cls::Bool, t};
      }
      case Tok::KwNot: {
        advance();
        Parsed operand = parse_operand(kPrecNot, "expected a property after 'not'");
        return Parsed{AstNode::unary(Kind::PropNot, std::move(operand.node)), Cls::Prop, t};
      }
      case Tok::HashHash: {
        advance();
        AstNode shell = delay_shell(t);
        Parsed operand = parse_operand(kPrecRepeat, "expected a sequence after delay '##'");
        require(operand, Cls::Seq);
        shell.children.push_back(std::move(operand.node));
        return Parsed{std::move(shell), Cls::Seq, t};
      }
      case Tok::LParen:
        return parse_group();
      case Tok::KwUnsupported:
        fail_here("unsupported SVA keyword '" + t.text + "'");
      case Tok::End: {
        const Token& p = prev();
        fail_here("expected an expression after '" + p.text + "'");
      }
      default:
        fail_here("unexpected '" + t.text + "' where an expression was expected");
    }
  }

  Parsed parse_group() {
    const Token open = advance();
    Parsed inner = parse_operand(kPrecNot, "expected an expression after '('");
    if (peek().kind == Tok::Comma) {
      advance();
      require(inner, Cls::Seq);
      if (peek().kind != Tok::Ident) fail_here("expected local variable name after ','");
      std::string var = advance().text;
      if (peek().kind != Tok::Assign) fail_here("expected '=' in local variable assignment");
      advance();
      Parsed value = parse_operand(kPrecLogOr, "expected an expression after '='");
      require(value, Cls::Bool);
      expect_close(Tok::RParen, "expected ')' to close '('");
      const bool fresh = bound_locals_.insert(var).second;
      AstNode node = AstNode::binary(fresh ? Kind::LocalVarDecl : Kind::LocalVarAssign,
                                     std::move(inner.node), std::move(value.node));
      node.name = std::move(var);
      return Parsed{std::move(node), Cls::Seq, open};
    }
    expect_close(Tok::RParen, "expected ')' to close '('");
    inner.first = open;
    return inner;
  }

  Parsed parse_sysfunc() {
    const Token fn = advance();
    const bool known = fn.text == "$rose" || fn.text == "$fell" || fn.text == "$stable" ||
                       fn.text == "$past";
    if (!known) fail_at(fn, "unknown system function '" + fn.text + "'");
    if (peek().kind != Tok::LParen) fail_here("expected '(' after '" + fn.text + "'");
    advance();
    if (peek().kind == Tok::RParen) fail_here(fn.text + " expects a signal argument");
    if (peek().kind != Tok::Ident || (peek(1).kind != Tok::Comma && peek(1).kind != Tok::RParen)) {
      fail_here(fn.text + " argument must be a single signal name");
    }
    AstNode node;
    node.kind = Kind::SysFunc;
    node.name = fn.text;
    node.arg = advance().text;
    node.lower = node.upper = 1;
    if (peek().kind == Tok::Comma) {
      if (fn.text != "$past") fail_here(fn.text + " expects exactly one argument");
      advance();
      if (peek().kind != Tok::Int) fail_here("$past delay must be an integer literal");
      long n = advance().value;
      if (n < 1) fail_at(prev(), "$past delay must be at least 1");
      node.lower = node.upper = static_cast<int>(n);
      if (peek().kind == Tok::Comma) fail_here("$past expects at most two arguments");
    }
    expect_close(Tok::RParen, "expected ')' to close '" + fn.text + "('");
    return Parsed{std::move(node), Cls::Bool, fn};
  }
};

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult result;
  try {
    Parser parser(lang::tokenize(text));
    AssertionUnit unit = parser.parse_unit();
    unit.source = std::string(text);
    result.unit = std::move(unit);
  } catch (const SyntaxError& e) {
    result.diagnostics.push_back(e.diagnostic());
  }
  return result;
}

}  // namespace svagen
