#include "rtlp/hoa.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace rtlp {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

void write_label(std::ostream& os, const Formula& g, const std::map<OccId, int>& ap, Op parent) {
  switch (g.op()) {
    case Op::True: os << 't'; return;
    case Op::False: os << 'f'; return;
    case Op::Atom: os << ap.at(g.atom_id()); return;
    case Op::Not: {
      os << '!';
      const bool atomic = g.child(0).arity() == 0;
      if (!atomic) os << '(';
      write_label(os, g.child(0), ap, Op::Not);
      if (!atomic) os << ')';
      return;
    }
    case Op::And:
    case Op::Or: {
      const bool paren = parent == Op::And && g.op() == Op::Or;
      if (paren) os << '(';
      write_label(os, g.child(0), ap, g.op());
      os << (g.op() == Op::And ? " & " : " | ");
      write_label(os, g.child(1), ap, g.op());
      if (paren) os << ')';
      return;
    }
    default: throw std::invalid_argument("guard contains a temporal operator");
  }
}

enum class T { End, Header, Word, Int, String, Body, EndMark, Punct };

struct Tok {
  T kind = T::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class HoaLexer {
 public:
  explicit HoaLexer(std::string_view s) : s_(s) {}

  Tok next() {
    skip();
    Tok t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= s_.size()) return t;
    const char c = s_[pos_];
    if (c == '"') {
      bump();
      while (true) {
        if (pos_ >= s_.size()) throw ParseError("unterminated string", t.line, t.column);
        char d = s_[pos_];
        bump();
        if (d == '"') break;
        if (d == '\\') {
          if (pos_ >= s_.size()) throw ParseError("unterminated string", t.line, t.column);
          d = s_[pos_];
          bump();
        }
        t.text += d;
      }
      t.kind = T::String;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        t.text += s_[pos_];
        bump();
      }
      t.kind = T::Int;
      return t;
    }
    if (s_.substr(pos_, 8) == "--BODY--") {
      for (int i = 0; i < 8; ++i) bump();
      t.kind = T::Body;
      t.text = "--BODY--";
      return t;
    }
    if (s_.substr(pos_, 7) == "--END--") {
      for (int i = 0; i < 7; ++i) bump();
      t.kind = T::EndMark;
      t.text = "--END--";
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < s_.size()) {
        const char d = s_[pos_];
        if (!(std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '-')) break;
        t.text += d;
        bump();
      }
      if (pos_ < s_.size() && s_[pos_] == ':') {
        bump();
        t.kind = T::Header;
      } else {
        t.kind = T::Word;
      }
      return t;
    }
    if (std::string_view("[]{}()!&|").find(c) != std::string_view::npos) {
      bump();
      t.kind = T::Punct;
      t.text = std::string(1, c);
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  void bump() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        bump();
      } else if (s_.substr(pos_, 2) == "/*") {
        const int l = line_, c = col_;
        bump();
        bump();
        while (pos_ < s_.size() && s_.substr(pos_, 2) != "*/") bump();
        if (pos_ >= s_.size()) throw ParseError("unterminated comment", l, c);
        bump();
        bump();
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class HoaParser {
 public:
  HoaParser(std::string_view text, const PredicateTable& table) : lex_(text), table_(table) { cur_ = lex_.next(); }

  Nba parse() {
    expect_header("HOA");
    if (cur_.kind != T::Word || cur_.text != "v1") fail("expected 'v1'");
    bump();
    parse_headers();
    return parse_body();
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur_.line, cur_.column); }
  void bump() { cur_ = lex_.next(); }

  void expect_header(const std::string& name) {
    if (cur_.kind != T::Header || cur_.text != name) fail("expected '" + name + ":'");
    bump();
  }

  bool is_punct(char c) const { return cur_.kind == T::Punct && cur_.text[0] == c; }

  void expect_punct(char c) {
    if (!is_punct(c)) fail(std::string("expected '") + c + "'");
    bump();
  }

  int integer() {
    if (cur_.kind != T::Int) fail("expected an integer");
    int v = 0;
    try {
      v = std::stoi(cur_.text);
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
    bump();
    return v;
  }

  void parse_headers() {
    bool have_states = false, have_acceptance = false;
    while (cur_.kind == T::Header) {
      const std::string h = cur_.text;
      bump();
      if (h == "States") {
        states_ = integer();
        have_states = true;
      } else if (h == "Start") {
        starts_.push_back({cur_.line, cur_.column, integer()});
        if (is_punct('&')) fail("conjunctive initial states are not supported");
      } else if (h == "AP") {
        const int n = integer();
        for (int i = 0; i < n; ++i) {
          if (cur_.kind != T::String) fail("expected an AP name");
          auto id = table_.find(cur_.text);
          if (!id) fail("unknown proposition '" + cur_.text + "'");
          ap_.push_back(*id);
          bump();
        }
        if (cur_.kind == T::String) fail("more AP names than declared");
      } else if (h == "Acceptance") {
        const int sets = integer();
        if (sets == 0 && cur_.kind == T::Word && cur_.text == "t") {
          all_final_ = true;
          bump();
        } else if (sets == 1 && cur_.kind == T::Word && cur_.text == "Inf") {
          bump();
          expect_punct('(');
          if (integer() != 0) fail("expected acceptance set 0");
          expect_punct(')');
        } else {
          fail("only Buchi acceptance is supported");
        }
        have_acceptance = true;
      } else {
        // name, tool, acc-name, properties and unknown headers carry no data we need.
        while (cur_.kind != T::Header && cur_.kind != T::Body && cur_.kind != T::End) bump();
      }
    }
    if (cur_.kind != T::Body) fail("expected '--BODY--'");
    if (!have_states) fail("missing 'States:' header");
    if (!have_acceptance) fail("missing 'Acceptance:' header");
    bump();
  }

  Formula label_or() {
    Formula f = label_and();
    while (is_punct('|')) {
      bump();
      f = Formula::disj(f, label_and());
    }
    return f;
  }

  Formula label_and() {
    Formula f = label_not();
    while (is_punct('&')) {
      bump();
      f = Formula::conj(f, label_not());
    }
    return f;
  }

  Formula label_not() {
    if (is_punct('!')) {
      bump();
      return Formula::negate(label_not());
    }
    if (is_punct('(')) {
      bump();
      Formula f = label_or();
      expect_punct(')');
      return f;
    }
    if (cur_.kind == T::Word && (cur_.text == "t" || cur_.text == "f")) {
      const bool t = cur_.text == "t";
      bump();
      return t ? Formula::tt() : Formula::ff();
    }
    if (cur_.kind == T::Int) {
      const int line = cur_.line, col = cur_.column;
      const int i = integer();
      if (i < 0 || i >= static_cast<int>(ap_.size())) throw ParseError("AP index out of range", line, col);
      return Formula::atom(ap_[static_cast<std::size_t>(i)]);
    }
    fail("expected a label expression");
  }

  int state_ref() {
    const int line = cur_.line, col = cur_.column;
    const int q = integer();
    if (q < 0 || q >= states_) throw ParseError("state " + std::to_string(q) + " out of range", line, col);
    return q;
  }

  Nba parse_body() {
    Nba nba(states_);
    for (const auto& s : starts_) {
      if (s.state < 0 || s.state >= states_) throw ParseError("start state out of range", s.line, s.column);
      nba.set_initial(s.state);
    }
    if (all_final_)
      for (int q = 0; q < states_; ++q) nba.set_final(q);
    while (cur_.kind == T::Header && cur_.text == "State") {
      bump();
      const int q = state_ref();
      if (cur_.kind == T::String) bump();
      if (is_punct('{')) {
        bump();
        while (cur_.kind == T::Int) {
          if (integer() != 0) fail("unknown acceptance set");
          nba.set_final(q);
        }
        expect_punct('}');
      }
      while (is_punct('[')) {
        bump();
        Formula g = label_or();
        expect_punct(']');
        const int to = state_ref();
        if (is_punct('{')) fail("transition-based acceptance is not supported");
        nba.add_guard(Edge{q, to}, Guard(g));
      }
      if (cur_.kind == T::Int) fail("unlabelled transitions are not supported");
    }
    if (cur_.kind != T::EndMark) fail("expected 'State:' or '--END--'");
    return nba;
  }

  struct Start {
    int line;
    int column;
    int state;
  };

  HoaLexer lex_;
  const PredicateTable& table_;
  Tok cur_;
  int states_ = 0;
  bool all_final_ = false;
  std::vector<Start> starts_;
  std::vector<OccId> ap_;
};

}  // namespace

std::string export_hoa(const Nba& nba, const PredicateTable& table, std::string_view name) {
  std::vector<OccId> atoms;
  for (const auto& [e, g] : nba.edges()) {
    auto a = g.formula().atoms();
    atoms.insert(atoms.end(), a.begin(), a.end());
  }
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  std::map<OccId, int> ap;
  for (std::size_t i = 0; i < atoms.size(); ++i) ap[atoms[i]] = static_cast<int>(i);

  std::ostringstream os;
  os << "HOA: v1\n";
  if (!name.empty()) os << "name: " << quote(name) << "\n";
  os << "States: " << nba.num_states() << "\n";
  for (StateId q : nba.initial()) os << "Start: " << q << "\n";
  os << "AP: " << atoms.size();
  for (OccId a : atoms) os << ' ' << quote(table.at(a).name);
  os << "\n";
  os << "acc-name: Buchi\n";
  os << "Acceptance: 1 Inf(0)\n";
  os << "properties: trans-labels explicit-labels state-acc\n";
  os << "--BODY--\n";
  for (StateId q = 0; q < nba.num_states(); ++q) {
    os << "State: " << q;
    if (nba.is_final(q)) os << " {0}";
    os << "\n";
    for (const auto& [to, g] : nba.successors(q)) {
      os << '[';
      write_label(os, g->formula(), ap, Op::Or);
      os << "] " << to << "\n";
    }
  }
  os << "--END--\n";
  return os.str();
}

Nba import_hoa(std::string_view text, const PredicateTable& table) {
  HoaParser p(text, table);
  return p.parse();
}

}  // namespace rtlp
