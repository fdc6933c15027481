#include "rtlp/predicate.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtlp {

void PredicateTable::declare(PredicateDecl decl) {
  if (decl.name.empty()) throw std::invalid_argument("predicate name is empty");
  if (decl_index_.count(decl.name) != 0)
    throw std::invalid_argument("predicate '" + decl.name + "' declared twice");
  if (!occ_.empty())
    throw std::logic_error("predicates must be declared before occurrences are added");
  decl_index_.emplace(decl.name, decls_.size());
  decls_.push_back(std::move(decl));
}

bool PredicateTable::is_declared(std::string_view name) const {
  return decl_index_.find(name) != decl_index_.end();
}

const PredicateDecl& PredicateTable::declaration(std::string_view name) const {
  auto it = decl_index_.find(name);
  if (it == decl_index_.end())
    throw std::out_of_range("undeclared predicate '" + std::string(name) + "'");
  return decls_[it->second];
}

OccId PredicateTable::add_occurrence(std::string_view decl_name) {
  if (num_robots_ > 0)
    throw std::logic_error("occurrences cannot be added after rebindings were expanded");
  const PredicateDecl& d = declaration(decl_name);
  int& uses = decl_uses_[d.name];
  ++uses;
  Predicate p;
  p.id = static_cast<OccId>(occ_.size());
  p.name = uses == 1 ? d.name : d.name + "#" + std::to_string(uses);
  p.decl = d.name;
  p.origin = p.id;
  p.skill = d.skill;
  p.robot = d.robot;
  p.location = d.location;
  p.team = d.team;
  by_name_.emplace(p.name, p.id);
  occ_.push_back(std::move(p));
  ++num_textual_;
  return occ_.back().id;
}

void PredicateTable::expand_rebindings(int num_robots) {
  if (num_robots <= 0) throw std::invalid_argument("expand_rebindings needs at least one robot");
  if (num_robots_ > 0) {
    if (num_robots != num_robots_)
      throw std::logic_error("rebindings already expanded for a different team size");
    return;
  }
  num_robots_ = num_robots;
  rebound_.assign(static_cast<std::size_t>(num_textual_), {});
  for (OccId origin = 0; origin < num_textual_; ++origin) {
    const Predicate base = occ_[static_cast<std::size_t>(origin)];
    if (!base.assigned()) continue;
    auto& row = rebound_[static_cast<std::size_t>(origin)];
    row.resize(static_cast<std::size_t>(num_robots), -1);
    for (RobotId r = 1; r <= num_robots; ++r) {
      if (r == *base.robot) {
        row[static_cast<std::size_t>(r - 1)] = origin;
        continue;
      }
      Predicate p = base;
      p.id = static_cast<OccId>(occ_.size());
      p.name = base.name + "@" + std::to_string(r);
      p.robot = r;
      by_name_.emplace(p.name, p.id);
      occ_.push_back(std::move(p));
      row[static_cast<std::size_t>(r - 1)] = occ_.back().id;
    }
  }
}

OccId PredicateTable::rebind(OccId occ, RobotId robot) const {
  if (num_robots_ == 0) throw std::logic_error("rebindings were not expanded");
  const Predicate& p = at(occ);
  if (!p.assigned()) throw std::invalid_argument("team predicate '" + p.name + "' cannot be rebound");
  if (robot < 1 || robot > num_robots_)
    throw std::out_of_range("robot " + std::to_string(robot) + " out of range");
  return rebound_[static_cast<std::size_t>(p.origin)][static_cast<std::size_t>(robot - 1)];
}

const Predicate& PredicateTable::at(OccId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= occ_.size())
    throw std::out_of_range("unknown predicate occurrence " + std::to_string(id));
  return occ_[static_cast<std::size_t>(id)];
}

std::optional<OccId> PredicateTable::find(std::string_view occurrence_name) const {
  auto it = by_name_.find(occurrence_name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

Symbol::Symbol(std::initializer_list<OccId> ids) : Symbol(std::vector<OccId>(ids)) {}

Symbol::Symbol(std::vector<OccId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool Symbol::contains(OccId id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

void Symbol::insert(OccId id) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) ids_.insert(it, id);
}

}  // namespace rtlp
