#include "rtlp/guard.hpp"

#include <algorithm>
#include <string>

namespace rtlp {

bool Clause::satisfied_by(const Symbol& s) const {
  for (OccId p : pos)
    if (!s.contains(p)) return false;
  for (OccId n : neg)
    if (s.contains(n)) return false;
  return true;
}

bool Clause::has_positive(OccId id) const { return std::binary_search(pos.begin(), pos.end(), id); }
bool Clause::has_negative(OccId id) const { return std::binary_search(neg.begin(), neg.end(), id); }

std::vector<OccId> Clause::atoms() const {
  std::vector<OccId> out;
  std::set_union(pos.begin(), pos.end(), neg.begin(), neg.end(), std::back_inserter(out));
  return out;
}

void Clause::normalize() {
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  std::sort(neg.begin(), neg.end());
  neg.erase(std::unique(neg.begin(), neg.end()), neg.end());
}

DnfLimitError::DnfLimitError(std::size_t atoms, std::size_t cap)
    : std::runtime_error("guard has " + std::to_string(atoms) + " atoms, DNF cap is " +
                         std::to_string(cap)),
      atoms_(atoms),
      cap_(cap) {}

namespace {

bool contradictory(const Clause& c) {
  std::vector<OccId> both;
  std::set_intersection(c.pos.begin(), c.pos.end(), c.neg.begin(), c.neg.end(),
                        std::back_inserter(both));
  return !both.empty();
}

void canonicalize(Dnf& d) {
  for (auto& c : d) c.normalize();
  d.erase(std::remove_if(d.begin(), d.end(), contradictory), d.end());
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
}

Dnf dnf_of(const Formula& f, bool negated) {
  switch (f.op()) {
    case Op::True:
      return negated ? Dnf{} : Dnf{Clause{}};
    case Op::False:
      return negated ? Dnf{Clause{}} : Dnf{};
    case Op::Atom: {
      Clause c;
      (negated ? c.neg : c.pos).push_back(f.atom_id());
      return {c};
    }
    case Op::Not:
      return dnf_of(f.child(0), !negated);
    case Op::And:
    case Op::Or: {
      const bool is_and = (f.op() == Op::And) != negated;
      Dnf a = dnf_of(f.child(0), negated);
      Dnf b = dnf_of(f.child(1), negated);
      if (!is_and) {
        a.insert(a.end(), b.begin(), b.end());
        canonicalize(a);
        return a;
      }
      Dnf out;
      out.reserve(a.size() * b.size());
      for (const auto& x : a)
        for (const auto& y : b) {
          Clause c = x;
          c.pos.insert(c.pos.end(), y.pos.begin(), y.pos.end());
          c.neg.insert(c.neg.end(), y.neg.begin(), y.neg.end());
          out.push_back(std::move(c));
        }
      canonicalize(out);
      return out;
    }
    default:
      throw std::invalid_argument("guard contains a temporal operator");
  }
}

}  // namespace

Dnf guard_to_dnf(const Formula& g, std::size_t atom_cap) {
  const auto atoms = g.atoms();
  if (atoms.size() > atom_cap) throw DnfLimitError(atoms.size(), atom_cap);
  Dnf d = dnf_of(g, false);
  canonicalize(d);
  return d;
}

bool guard_accepts(const Formula& g, const Symbol& s) {
  switch (g.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return s.contains(g.atom_id());
    case Op::Not: return !guard_accepts(g.child(0), s);
    case Op::And: return guard_accepts(g.child(0), s) && guard_accepts(g.child(1), s);
    case Op::Or: return guard_accepts(g.child(0), s) || guard_accepts(g.child(1), s);
    default: throw std::invalid_argument("guard contains a temporal operator");
  }
}

Formula clauses_to_guard(const Dnf& clauses) {
  if (clauses.empty()) return Formula::ff();
  std::optional<Formula> out;
  for (const auto& c : clauses) {
    std::optional<Formula> term;
    auto add = [&term](Formula lit) { term = term ? Formula::conj(*term, lit) : lit; };
    for (OccId p : c.pos) add(Formula::atom(p));
    for (OccId n : c.neg) add(Formula::negate(Formula::atom(n)));
    Formula t = term ? *term : Formula::tt();
    out = out ? Formula::disj(*out, t) : t;
  }
  return *out;
}

Guard::Guard(Formula expr) : expr_(std::move(expr)) {}

Guard Guard::from_clauses(const Dnf& clauses) {
  Dnf sorted = clauses;
  canonicalize(sorted);
  Guard g(clauses_to_guard(sorted));
  g.dnf_ = std::move(sorted);
  return g;
}

const Dnf& Guard::dnf() const {
  if (!dnf_) dnf_ = guard_to_dnf(expr_, kGuardDnfAtomCap);
  return *dnf_;
}

bool Guard::is_false() const { return expr_.op() == Op::False || dnf().empty(); }

bool Guard::mentions(OccId id) const {
  const auto atoms = expr_.atoms();
  return std::binary_search(atoms.begin(), atoms.end(), id);
}

bool Guard::mentions_positive(OccId id) const {
  return std::any_of(dnf().begin(), dnf().end(), [id](const Clause& c) { return c.has_positive(id); });
}

}  // namespace rtlp
