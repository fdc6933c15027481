#include <cctype>

#include "rtlp/ltl.hpp"

namespace rtlp {

ParseError::ParseError(std::string message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { End, Ident, True, False, Not, And, Or, Next, Until, Release, Eventually, Always, LParen, RParen };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      advance();
      t.kind = k;
      t.text = std::string(1, c);
      return t;
    };
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '!': return single(Tok::Not);
      case '&':
        advance();
        if (pos_ < src_.size() && src_[pos_] == '&') advance();
        t.kind = Tok::And;
        t.text = "&";
        return t;
      case '|':
        advance();
        if (pos_ < src_.size() && src_[pos_] == '|') advance();
        t.kind = Tok::Or;
        t.text = "|";
        return t;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < src_.size()) {
        const char d = src_[pos_];
        if (!(std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '#' || d == '@')) break;
        word += d;
        advance();
      }
      t.text = word;
      if (word == "true") t.kind = Tok::True;
      else if (word == "false") t.kind = Tok::False;
      else if (word == "X") t.kind = Tok::Next;
      else if (word == "F") t.kind = Tok::Eventually;
      else if (word == "G") t.kind = Tok::Always;
      else if (word == "U") t.kind = Tok::Until;
      else if (word == "R") t.kind = Tok::Release;
      else t.kind = Tok::Ident;
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view src, const AtomResolver& resolve) : lex_(src), resolve_(resolve) {
    cur_ = lex_.next();
  }

  Formula parse() {
    auto f = parse_or();
    if (cur_.kind != Tok::End) fail("unexpected '" + cur_.text + "'");
    return f;
  }

 private:
  static constexpr int kMaxDepth = 512;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur_.line, cur_.column); }

  void bump() { cur_ = lex_.next(); }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth) p_.fail("formula nested too deeply");
    }
    ~DepthGuard() { --p_.depth_; }
    Parser& p_;
  };

  Formula parse_or() {
    DepthGuard g(*this);
    auto lhs = parse_and();
    while (cur_.kind == Tok::Or) {
      bump();
      lhs = Formula::disj(lhs, parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    DepthGuard g(*this);
    auto lhs = parse_until();
    while (cur_.kind == Tok::And) {
      bump();
      lhs = Formula::conj(lhs, parse_until());
    }
    return lhs;
  }

  Formula parse_until() {
    DepthGuard g(*this);
    auto lhs = parse_unary();
    if (cur_.kind == Tok::Until) {
      bump();
      return Formula::until(lhs, parse_until());
    }
    if (cur_.kind == Tok::Release) {
      bump();
      return Formula::release(lhs, parse_until());
    }
    return lhs;
  }

  Formula parse_unary() {
    DepthGuard g(*this);
    switch (cur_.kind) {
      case Tok::Not: bump(); return Formula::negate(parse_unary());
      case Tok::Next: bump(); return Formula::next(parse_unary());
      case Tok::Eventually: bump(); return Formula::eventually(parse_unary());
      case Tok::Always: bump(); return Formula::always(parse_unary());
      default: return parse_primary();
    }
  }

  Formula parse_primary() {
    switch (cur_.kind) {
      case Tok::True: bump(); return Formula::tt();
      case Tok::False: bump(); return Formula::ff();
      case Tok::LParen: {
        bump();
        auto f = parse_or();
        if (cur_.kind != Tok::RParen) fail("expected ')'");
        bump();
        return f;
      }
      case Tok::Ident: {
        auto id = resolve_(cur_.text);
        if (!id) fail("undeclared predicate '" + cur_.text + "'");
        bump();
        return Formula::atom(*id);
      }
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected '" + cur_.text + "'");
    }
  }

  Lexer lex_;
  const AtomResolver& resolve_;
  Token cur_;
  int depth_ = 0;
};

}  // namespace

Formula parse_ltl(std::string_view text, const AtomResolver& resolve) {
  Parser p(text, resolve);
  return p.parse();
}

Formula parse_ltl(std::string_view text, const std::map<std::string, OccId, std::less<>>& names) {
  AtomResolver r = [&names](std::string_view n) -> std::optional<OccId> {
    auto it = names.find(n);
    if (it == names.end()) return std::nullopt;
    return it->second;
  };
  return parse_ltl(text, r);
}

Formula parse_mission(std::string_view text, PredicateTable& table) {
  AtomResolver r = [&table](std::string_view n) -> std::optional<OccId> {
    if (!table.is_declared(n)) return std::nullopt;
    return table.add_occurrence(n);
  };
  return parse_ltl(text, r);
}

}  // namespace rtlp
