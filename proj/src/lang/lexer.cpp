#include "lexer.hpp"

#include <cctype>
#include <unordered_map>

namespace svagen::lang {
namespace {

constexpr long kMaxLiteral = 1'000'000;

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> table = {
      {"posedge", Tok::KwPosedge}, {"negedge", Tok::KwNegedge}, {"disable", Tok::KwDisable},
      {"iff", Tok::KwIff},         {"not", Tok::KwNot},         {"and", Tok::KwAnd},
      {"or", Tok::KwOr},           {"until", Tok::KwUntil},     {"within", Tok::KwWithin},
      // Recognized so they get a targeted message rather than being read as signals.
      {"throughout", Tok::KwUnsupported}, {"intersect", Tok::KwUnsupported},
      {"first_match", Tok::KwUnsupported}, {"s_until", Tok::KwUnsupported},
      {"until_with", Tok::KwUnsupported}, {"s_until_with", Tok::KwUnsupported},
      {"implies", Tok::KwUnsupported},    {"nexttime", Tok::KwUnsupported},
      {"s_nexttime", Tok::KwUnsupported}, {"always", Tok::KwUnsupported},
      {"s_always", Tok::KwUnsupported},   {"eventually", Tok::KwUnsupported},
      {"s_eventually", Tok::KwUnsupported}, {"property", Tok::KwUnsupported},
      {"sequence", Tok::KwUnsupported},   {"assert", Tok::KwUnsupported},
      {"assume", Tok::KwUnsupported},     {"cover", Tok::KwUnsupported},
      {"endproperty", Tok::KwUnsupported}, {"endsequence", Tok::KwUnsupported},
      {"accept_on", Tok::KwUnsupported},  {"reject_on", Tok::KwUnsupported},
  };
  return table;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : src_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (pos_ >= src_.size()) {
        out.push_back(Token{Tok::End, "", line_, col_, 0});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  char peek(std::size_t off = 0) const {
    return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
  }

  void bump(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  [[noreturn]] void fail(int line, int col, std::string message, std::string token) {
    throw SyntaxError(Diagnostic{line, col, std::move(message), std::move(token)});
  }

  void skip_trivia() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') bump();
      } else if (c == '/' && peek(1) == '*') {
        int line = line_, col = col_;
        bump(2);
        while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) bump();
        if (pos_ >= src_.size()) fail(line, col, "unterminated block comment", "/*");
        bump(2);
      } else {
        return;
      }
    }
  }

  Token make(Tok kind, std::size_t len) {
    Token t{kind, std::string(src_.substr(pos_, len)), line_, col_, 0};
    bump(len);
    return t;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Token next() {
    const char c = peek();
    const int line = line_, col = col_;

    if (ident_start(c)) {
      std::size_t len = 0;
      while (ident_char(peek(len))) ++len;
      std::string_view word = src_.substr(pos_, len);
      auto it = keywords().find(word);
      return make(it == keywords().end() ? Tok::Ident : it->second, len);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t len = 0;
      while (std::isdigit(static_cast<unsigned char>(peek(len)))) ++len;
      if (ident_char(peek(len)) || peek(len) == '\'') {
        std::size_t end = len;
        while (ident_char(peek(end)) || peek(end) == '\'') ++end;
        fail(line, col, "sized or based literal needs a width conversion outside the 1-bit fragment",
             std::string(src_.substr(pos_, end)));
      }
      std::string digits(src_.substr(pos_, len));
      if (len > 7 || std::stol(digits) > kMaxLiteral) {
        fail(line, col, "integer literal " + digits + " is too large", digits);
      }
      Token t = make(Tok::Int, len);
      t.value = std::stol(digits);
      return t;
    }
    if (c == '$') {
      std::size_t len = 1;
      while (ident_char(peek(len))) ++len;
      return make(len == 1 ? Tok::Dollar : Tok::SysIdent, len);
    }

    switch (c) {
      case '@': return make(Tok::At, 1);
      case '(': return make(Tok::LParen, 1);
      case ')': return make(Tok::RParen, 1);
      case ']': return make(Tok::RBracket, 1);
      case ':': return make(Tok::Colon, 1);
      case ',': return make(Tok::Comma, 1);
      case '[':
        if (peek(1) == '*') return make(Tok::RepStar, 2);
        if (peek(1) == '-' && peek(2) == '>') return make(Tok::RepGoto, 3);
        if (peek(1) == '=') return make(Tok::RepEq, 2);
        if (peek(1) == '+') fail(line, col, "unsupported repetition shorthand '[+'", "[+");
        return make(Tok::LBracket, 1);
      case '#':
        if (peek(1) == '#') return make(Tok::HashHash, 2);
        fail(line, col, "malformed delay operator '#', expected '##'", "#");
      case '!':
        if (peek(1) == '=') {
          if (peek(2) == '=') fail(line, col, "unsupported boolean operator '!=='", "!==");
          return make(Tok::NotEq, 2);
        }
        return make(Tok::Bang, 1);
      case '=':
        if (peek(1) == '=') {
          if (peek(2) == '=') fail(line, col, "unsupported boolean operator '==='", "===");
          return make(Tok::EqEq, 2);
        }
        if (peek(1) == '>') fail(line, col, "malformed implication operator '=>'", "=>");
        return make(Tok::Assign, 1);
      case '&':
        if (peek(1) == '&') return make(Tok::AndAnd, 2);
        fail(line, col, "unsupported boolean operator '&', expected '&&'", "&");
      case '|':
        if (peek(1) == '|') return make(Tok::OrOr, 2);
        if (peek(1) == '-' && peek(2) == '>') return make(Tok::ImplOverlap, 3);
        if (peek(1) == '=' && peek(2) == '>') return make(Tok::ImplNonOverlap, 3);
        if (peek(1) == '-' || peek(1) == '=') {
          fail(line, col, "malformed implication operator '" + std::string(src_.substr(pos_, 2)) + "'",
               std::string(src_.substr(pos_, 2)));
        }
        fail(line, col, "unsupported boolean operator '|', expected '||'", "|");
      case '-':
        if (peek(1) == '>') fail(line, col, "malformed implication operator '->', expected '|->'", "->");
        break;
      case '<':
      case '>': {
        std::size_t len = peek(1) == '=' ? 2 : 1;
        std::string op(src_.substr(pos_, len));
        fail(line, col, "unsupported relational operator '" + op + "' on 1-bit signals", op);
      }
      case '~':
      case '^':
        fail(line, col, std::string("unsupported boolean operator '") + c + "'", std::string(1, c));
      default:
        break;
    }
    std::string bad(1, c);
    if (static_cast<unsigned char>(c) >= 0x80) bad = "\\x" + [&] {
        static const char* hex = "0123456789abcdef";
        unsigned v = static_cast<unsigned char>(c);
        return std::string{hex[v >> 4], hex[v & 15]};
      }();
    fail(line, col, "stray character '" + bad + "' in input", bad);
  }
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace svagen::lang
