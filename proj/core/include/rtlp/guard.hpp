#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rtlp/ltl.hpp"

namespace rtlp {

/// One conjunct b^d of a guard in disjunctive normal form.
struct Clause {
  std::vector<OccId> pos;  // sorted, unique
  std::vector<OccId> neg;  // sorted, unique

  bool satisfied_by(const Symbol& s) const;
  bool has_positive(OccId id) const;
  bool has_negative(OccId id) const;
  std::vector<OccId> atoms() const;
  void normalize();

  auto operator<=>(const Clause&) const = default;
  bool operator==(const Clause&) const = default;
};

using Dnf = std::vector<Clause>;

class DnfLimitError : public std::runtime_error {
 public:
  DnfLimitError(std::size_t atoms, std::size_t cap);
  std::size_t atoms() const { return atoms_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t atoms_;
  std::size_t cap_;
};

inline constexpr std::size_t kDefaultDnfAtomCap = 20;
// Cap used by Guard::dnf(); automaton guards are mostly conjunctions and
// blow up only through disjunctions, which repair keeps small.
inline constexpr std::size_t kGuardDnfAtomCap = 64;

/// Equivalent DNF of a Boolean formula; clauses are deduplicated, sorted and
/// contradictory clauses are dropped. An empty result means FALSE.
Dnf guard_to_dnf(const Formula& g, std::size_t atom_cap = kDefaultDnfAtomCap);

bool guard_accepts(const Formula& g, const Symbol& s);

/// OR of AND-clauses, in the given order. Empty input gives FALSE.
Formula clauses_to_guard(const Dnf& clauses);

/// Transition label: a Boolean formula with a lazily built DNF view.
/// The DNF cache is not synchronised; share guards read-only only after
/// calling dnf() once.
class Guard {
 public:
  Guard() : Guard(Formula::tt()) {}
  explicit Guard(Formula expr);
  static Guard from_clauses(const Dnf& clauses);

  const Formula& formula() const { return expr_; }
  const Dnf& dnf() const;
  bool accepts(const Symbol& s) const { return guard_accepts(expr_, s); }
  bool is_false() const;
  bool mentions(OccId id) const;
  bool mentions_positive(OccId id) const;

 private:
  Formula expr_;
  mutable std::optional<Dnf> dnf_;
};

}  // namespace rtlp
