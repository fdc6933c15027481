#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rtlp/predicate.hpp"

namespace rtlp {

enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Next,
  Until,
  Release,
  Eventually,
  Always,
};

/// Immutable LTL syntax tree. Copies share structure.
class Formula {
 public:
  Formula();  // `true`

  static Formula tt();
  static Formula ff();
  static Formula atom(OccId id);
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula next(Formula f);
  static Formula until(Formula a, Formula b);
  static Formula release(Formula a, Formula b);
  static Formula eventually(Formula f);
  static Formula always(Formula f);

  Op op() const;
  OccId atom_id() const;
  std::size_t arity() const;
  const Formula& child(std::size_t i) const;
  const Formula& lhs() const { return child(0); }
  const Formula& rhs() const { return child(arity() - 1); }

  bool is_literal() const;
  bool is_temporal() const;

  /// Structural equality.
  bool operator==(const Formula& other) const;

  /// Fully parenthesised text that `parse_ltl` reads back. Atoms print as
  /// occurrence names when a table is given, otherwise as `p<id>`.
  std::string to_string(const PredicateTable* table = nullptr) const;

  /// Every occurrence id mentioned, with repetition removed.
  std::vector<OccId> atoms() const;

  std::size_t depth() const;

 private:
  struct Node;
  static std::shared_ptr<const Node> make_node(Op op, OccId atom, std::vector<Formula> kids);
  explicit Formula(std::shared_ptr<const Node> n);
  std::shared_ptr<const Node> n_;
};

/// Infinite word stem . loop^omega.
struct LassoWord {
  std::vector<Symbol> stem;
  std::vector<Symbol> loop;

  std::size_t length() const { return stem.size() + loop.size(); }
  const Symbol& at(std::size_t pos) const;
  std::size_t successor(std::size_t pos) const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Maps a predicate name in mission text to an occurrence id.
using AtomResolver = std::function<std::optional<OccId>(std::string_view)>;

/// Parses `& | ! X F G U R`, parentheses, `true`/`false` and names.
/// Precedence: unary > U,R (right-assoc) > & > |.
Formula parse_ltl(std::string_view text, const AtomResolver& resolve);
Formula parse_ltl(std::string_view text, const std::map<std::string, OccId, std::less<>>& names);

/// Parses a mission; every textual use of a declared name becomes a fresh
/// occurrence in `table`.
Formula parse_mission(std::string_view text, PredicateTable& table);

Formula expand_sugar(const Formula& f);
Formula to_nnf(const Formula& f);
Formula simplify_constants(const Formula& f);

/// Number of distinct subformulas.
std::size_t closure_size(const Formula& f);

/// Exact LTL semantics on a lasso (fixpoints over the lasso positions).
bool evaluate_on_word(const Formula& f, const LassoWord& w);

}  // namespace rtlp
