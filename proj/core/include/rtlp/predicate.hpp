#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rtlp {

using OccId = int;
using RobotId = int;     // 1-based
using SkillId = int;     // 1-based, kMobility is reserved
using LandmarkId = int;  // 0-based index into the landmark table

inline constexpr SkillId kMobility = 1;
inline constexpr SkillId kNoSkill = 0;

/// A declared team predicate: robot `robot` of team T_team applies `skill`
/// at `location`. An empty robot means the predicate quantifies over the
/// whole team (used under negation).
struct PredicateDecl {
  std::string name;
  SkillId skill = kMobility;
  std::optional<RobotId> robot;
  LandmarkId location = 0;
  SkillId team = kMobility;
};

/// One occurrence of a declared predicate. Every textual occurrence in a
/// mission gets its own id; reassignment produces rebound copies that keep
/// the `origin` of the textual occurrence they were derived from.
struct Predicate {
  OccId id = -1;
  std::string name;
  std::string decl;
  OccId origin = -1;
  SkillId skill = kMobility;
  std::optional<RobotId> robot;
  LandmarkId location = 0;
  SkillId team = kMobility;

  bool assigned() const { return robot.has_value(); }
  bool is_mobility() const { return skill == kMobility; }
};

/// Owns every predicate occurrence of a mission.
///
/// Occurrence names are `<decl>` for the first textual occurrence,
/// `<decl>#k` for the k-th one and `<occurrence>@<robot>` for rebound copies.
/// Rebound copies are created up front by `expand_rebindings` so their ids do
/// not depend on the order in which repairs run.
class PredicateTable {
 public:
  void declare(PredicateDecl decl);
  bool is_declared(std::string_view name) const;
  const PredicateDecl& declaration(std::string_view name) const;
  const std::vector<PredicateDecl>& declarations() const { return decls_; }

  OccId add_occurrence(std::string_view decl_name);

  void expand_rebindings(int num_robots);
  bool rebindings_expanded() const { return num_robots_ > 0; }

  /// Id of the copy of `occ` assigned to `robot`. Throws for team
  /// (unassigned) occurrences and when rebindings were not expanded.
  OccId rebind(OccId occ, RobotId robot) const;

  const Predicate& at(OccId id) const;
  std::optional<OccId> find(std::string_view occurrence_name) const;
  std::size_t size() const { return occ_.size(); }
  const std::vector<Predicate>& all() const { return occ_; }
  int num_textual() const { return num_textual_; }

 private:
  std::vector<PredicateDecl> decls_;
  std::map<std::string, std::size_t, std::less<>> decl_index_;
  std::map<std::string, int, std::less<>> decl_uses_;
  std::vector<Predicate> occ_;
  std::map<std::string, OccId, std::less<>> by_name_;
  std::vector<std::vector<OccId>> rebound_;  // [origin][robot - 1]
  int num_textual_ = 0;
  int num_robots_ = 0;
};

/// A letter of the alphabet 2^AP: the set of occurrences that hold.
class Symbol {
 public:
  Symbol() = default;
  Symbol(std::initializer_list<OccId> ids);
  explicit Symbol(std::vector<OccId> ids);

  bool contains(OccId id) const;
  void insert(OccId id);
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }
  const std::vector<OccId>& ids() const { return ids_; }

  auto operator<=>(const Symbol&) const = default;
  bool operator==(const Symbol&) const = default;

 private:
  std::vector<OccId> ids_;  // sorted, unique
};

}  // namespace rtlp
