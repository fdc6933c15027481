#include "rtlp/ltl.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace rtlp {

struct Formula::Node {
  Op op = Op::True;
  OccId atom = -1;
  std::vector<Formula> kids;
};

Formula::Formula() : Formula(tt()) {}

Formula::Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

std::shared_ptr<const Formula::Node> Formula::make_node(Op op, OccId atom, std::vector<Formula> kids) {
  auto n = std::make_shared<Formula::Node>();
  n->op = op;
  n->atom = atom;
  n->kids = std::move(kids);
  return n;
}

Formula Formula::tt() {
  static const auto node = make_node(Op::True, -1, {});
  return Formula(node);
}

Formula Formula::ff() {
  static const auto node = make_node(Op::False, -1, {});
  return Formula(node);
}

Formula Formula::atom(OccId id) { return Formula(make_node(Op::Atom, id, {})); }
Formula Formula::negate(Formula f) { return Formula(make_node(Op::Not, -1, {std::move(f)})); }
Formula Formula::conj(Formula a, Formula b) {
  return Formula(make_node(Op::And, -1, {std::move(a), std::move(b)}));
}
Formula Formula::disj(Formula a, Formula b) {
  return Formula(make_node(Op::Or, -1, {std::move(a), std::move(b)}));
}
Formula Formula::next(Formula f) { return Formula(make_node(Op::Next, -1, {std::move(f)})); }
Formula Formula::until(Formula a, Formula b) {
  return Formula(make_node(Op::Until, -1, {std::move(a), std::move(b)}));
}
Formula Formula::release(Formula a, Formula b) {
  return Formula(make_node(Op::Release, -1, {std::move(a), std::move(b)}));
}
Formula Formula::eventually(Formula f) {
  return Formula(make_node(Op::Eventually, -1, {std::move(f)}));
}
Formula Formula::always(Formula f) { return Formula(make_node(Op::Always, -1, {std::move(f)})); }

Op Formula::op() const { return n_->op; }
OccId Formula::atom_id() const { return n_->atom; }
std::size_t Formula::arity() const { return n_->kids.size(); }

const Formula& Formula::child(std::size_t i) const {
  if (i >= n_->kids.size()) throw std::out_of_range("formula child index out of range");
  return n_->kids[i];
}

bool Formula::is_literal() const {
  switch (op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return true;
    case Op::Not:
      return child(0).op() == Op::Atom;
    default:
      return false;
  }
}

bool Formula::is_temporal() const {
  switch (op()) {
    case Op::Next:
    case Op::Until:
    case Op::Release:
    case Op::Eventually:
    case Op::Always:
      return true;
    default:
      return false;
  }
}

bool Formula::operator==(const Formula& other) const {
  if (n_ == other.n_) return true;
  if (op() != other.op() || atom_id() != other.atom_id() || arity() != other.arity()) return false;
  for (std::size_t i = 0; i < arity(); ++i)
    if (!(child(i) == other.child(i))) return false;
  return true;
}

namespace {

void print(const Formula& f, const PredicateTable* table, std::string& out) {
  auto unary = [&](const char* tok) {
    out += tok;
    out += '(';
    print(f.child(0), table, out);
    out += ')';
  };
  auto binary = [&](const char* tok) {
    out += '(';
    print(f.child(0), table, out);
    out += tok;
    print(f.child(1), table, out);
    out += ')';
  };
  switch (f.op()) {
    case Op::True: out += "true"; break;
    case Op::False: out += "false"; break;
    case Op::Atom:
      if (table != nullptr)
        out += table->at(f.atom_id()).name;
      else
        out += "p" + std::to_string(f.atom_id());
      break;
    case Op::Not: unary("!"); break;
    case Op::And: binary(" & "); break;
    case Op::Or: binary(" | "); break;
    case Op::Next: unary("X "); break;
    case Op::Until: binary(" U "); break;
    case Op::Release: binary(" R "); break;
    case Op::Eventually: unary("F "); break;
    case Op::Always: unary("G "); break;
  }
}

void collect_atoms(const Formula& f, std::set<OccId>& out) {
  if (f.op() == Op::Atom) out.insert(f.atom_id());
  for (std::size_t i = 0; i < f.arity(); ++i) collect_atoms(f.child(i), out);
}

}  // namespace

std::string Formula::to_string(const PredicateTable* table) const {
  std::string out;
  print(*this, table, out);
  return out;
}

std::vector<OccId> Formula::atoms() const {
  std::set<OccId> s;
  collect_atoms(*this, s);
  return {s.begin(), s.end()};
}

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (std::size_t i = 0; i < arity(); ++i) d = std::max(d, child(i).depth());
  return d + 1;
}

const Symbol& LassoWord::at(std::size_t pos) const {
  if (pos < stem.size()) return stem[pos];
  return loop.at(pos - stem.size());
}

std::size_t LassoWord::successor(std::size_t pos) const {
  return pos + 1 < length() ? pos + 1 : stem.size();
}

Formula expand_sugar(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return f;
    case Op::Not: return Formula::negate(expand_sugar(f.child(0)));
    case Op::And: return Formula::conj(expand_sugar(f.child(0)), expand_sugar(f.child(1)));
    case Op::Or: return Formula::disj(expand_sugar(f.child(0)), expand_sugar(f.child(1)));
    case Op::Next: return Formula::next(expand_sugar(f.child(0)));
    case Op::Until: return Formula::until(expand_sugar(f.child(0)), expand_sugar(f.child(1)));
    case Op::Release: return Formula::release(expand_sugar(f.child(0)), expand_sugar(f.child(1)));
    case Op::Eventually: return Formula::until(Formula::tt(), expand_sugar(f.child(0)));
    case Op::Always:
      return Formula::negate(
          Formula::until(Formula::tt(), Formula::negate(expand_sugar(f.child(0)))));
  }
  return f;
}

namespace {

Formula nnf(const Formula& f, bool negated) {
  switch (f.op()) {
    case Op::True: return negated ? Formula::ff() : f;
    case Op::False: return negated ? Formula::tt() : f;
    case Op::Atom: return negated ? Formula::negate(f) : f;
    case Op::Not: return nnf(f.child(0), !negated);
    case Op::And: {
      auto a = nnf(f.child(0), negated);
      auto b = nnf(f.child(1), negated);
      return negated ? Formula::disj(a, b) : Formula::conj(a, b);
    }
    case Op::Or: {
      auto a = nnf(f.child(0), negated);
      auto b = nnf(f.child(1), negated);
      return negated ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    case Op::Next: return Formula::next(nnf(f.child(0), negated));
    case Op::Until: {
      auto a = nnf(f.child(0), negated);
      auto b = nnf(f.child(1), negated);
      return negated ? Formula::release(a, b) : Formula::until(a, b);
    }
    case Op::Release: {
      auto a = nnf(f.child(0), negated);
      auto b = nnf(f.child(1), negated);
      return negated ? Formula::until(a, b) : Formula::release(a, b);
    }
    case Op::Eventually: {
      auto a = nnf(f.child(0), negated);
      return negated ? Formula::release(Formula::ff(), a) : Formula::until(Formula::tt(), a);
    }
    case Op::Always: {
      auto a = nnf(f.child(0), negated);
      return negated ? Formula::until(Formula::tt(), a) : Formula::release(Formula::ff(), a);
    }
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

Formula simplify_constants(const Formula& f) {
  if (f.arity() == 0) return f;
  if (f.op() == Op::Not) {
    auto a = simplify_constants(f.child(0));
    if (a.op() == Op::True) return Formula::ff();
    if (a.op() == Op::False) return Formula::tt();
    if (a.op() == Op::Not) return a.child(0);
    return Formula::negate(a);
  }
  if (f.arity() == 1) {
    auto a = simplify_constants(f.child(0));
    if (a.op() == Op::True || a.op() == Op::False) return a;
    switch (f.op()) {
      case Op::Next: return Formula::next(a);
      case Op::Eventually: return Formula::eventually(a);
      default: return Formula::always(a);
    }
  }
  auto a = simplify_constants(f.child(0));
  auto b = simplify_constants(f.child(1));
  switch (f.op()) {
    case Op::And:
      if (a.op() == Op::False || b.op() == Op::False) return Formula::ff();
      if (a.op() == Op::True) return b;
      if (b.op() == Op::True) return a;
      return Formula::conj(a, b);
    case Op::Or:
      if (a.op() == Op::True || b.op() == Op::True) return Formula::tt();
      if (a.op() == Op::False) return b;
      if (b.op() == Op::False) return a;
      return Formula::disj(a, b);
    case Op::Until:
      if (b.op() == Op::True || b.op() == Op::False) return b;
      if (a.op() == Op::False) return b;
      return Formula::until(a, b);
    default:  // Release
      if (b.op() == Op::True || b.op() == Op::False) return b;
      if (a.op() == Op::True) return b;
      return Formula::release(a, b);
  }
}

std::size_t closure_size(const Formula& f) {
  std::set<std::string> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (!seen.insert(g.to_string()).second) return;
    for (std::size_t i = 0; i < g.arity(); ++i) walk(g.child(i));
  };
  walk(f);
  return seen.size();
}

namespace {

class LassoEvaluator {
 public:
  explicit LassoEvaluator(const LassoWord& w) : w_(w), n_(w.length()) {}

  const std::vector<bool>& eval(const Formula& f) {
    // Key on the string form so shared subterms are evaluated once.
    const std::string key = f.to_string();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<bool> v(n_, false);
    switch (f.op()) {
      case Op::True: std::fill(v.begin(), v.end(), true); break;
      case Op::False: break;
      case Op::Atom:
        for (std::size_t i = 0; i < n_; ++i) v[i] = w_.at(i).contains(f.atom_id());
        break;
      case Op::Not: {
        const auto& a = eval(f.child(0));
        for (std::size_t i = 0; i < n_; ++i) v[i] = !a[i];
        break;
      }
      case Op::And:
      case Op::Or: {
        const auto a = eval(f.child(0));
        const auto& b = eval(f.child(1));
        for (std::size_t i = 0; i < n_; ++i) v[i] = f.op() == Op::And ? (a[i] && b[i]) : (a[i] || b[i]);
        break;
      }
      case Op::Next: {
        const auto& a = eval(f.child(0));
        for (std::size_t i = 0; i < n_; ++i) v[i] = a[w_.successor(i)];
        break;
      }
      case Op::Until:
      case Op::Eventually: {
        const auto a = f.op() == Op::Until ? eval(f.child(0)) : std::vector<bool>(n_, true);
        const auto& b = eval(f.rhs());
        fixpoint(v, false, [&](std::size_t i, bool succ) { return b[i] || (a[i] && succ); });
        break;
      }
      case Op::Release:
      case Op::Always: {
        const auto a = f.op() == Op::Release ? eval(f.child(0)) : std::vector<bool>(n_, false);
        const auto& b = eval(f.rhs());
        fixpoint(v, true, [&](std::size_t i, bool succ) { return b[i] && (a[i] || succ); });
        break;
      }
    }
    return memo_.emplace(key, std::move(v)).first->second;
  }

 private:
  template <class Step>
  void fixpoint(std::vector<bool>& v, bool init, Step step) {
    std::fill(v.begin(), v.end(), init);
    // The lasso graph has n positions, so n + 1 sweeps reach the fixpoint.
    for (std::size_t sweep = 0; sweep <= n_; ++sweep) {
      bool changed = false;
      for (std::size_t k = n_; k-- > 0;) {
        const bool nv = step(k, v[w_.successor(k)]);
        if (nv != v[k]) {
          v[k] = nv;
          changed = true;
        }
      }
      if (!changed) break;
    }
  }

  const LassoWord& w_;
  std::size_t n_;
  std::unordered_map<std::string, std::vector<bool>> memo_;
};

}  // namespace

bool evaluate_on_word(const Formula& f, const LassoWord& w) {
  if (w.loop.empty()) throw std::invalid_argument("lasso word has an empty loop");
  LassoEvaluator ev(w);
  return ev.eval(f)[0];
}

}  // namespace rtlp
