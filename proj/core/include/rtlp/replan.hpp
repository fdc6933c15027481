#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtlp/planner.hpp"

namespace rtlp {

/// Index into prefix ++ suffix of the node executed at time t. Times past
/// the first suffix pass wrap around the suffix.
int current_index(const PrefixSuffixPlan& plan, int t);

/// Nodes of prefix ++ suffix adjacent to an affected transition.
struct Breakpoints {
  PlanPath path;  // prefix ++ suffix, indices 0..T+K
  int T = 0;
  int K = 0;
  int k = 0;
  std::vector<int> pre;  // k <= k' <= T
  std::vector<int> suf;  // max(k, T+1) <= k' <= T+K
};

/// An index k' qualifies when it is at or after k and the automaton moves
/// along an affected edge on the hop into or out of it. The current index
/// k is always listed first.
Breakpoints compute_breakpoints(const PrefixSuffixPlan& plan, int k, const std::vector<Edge>& affected);

struct ReplanOptions {
  int budget = 50000;         // iterations per tree
  int total_budget = 400000;  // iterations over all local trees
  std::uint64_t seed = 1;
  int attempts = 4;           // prefix/suffix pairs for global replanning
};

enum class ReplanMode { Unchanged, Local, Global, Failed };
const char* mode_name(ReplanMode m);

struct ReplanReport {
  ReplanMode mode = ReplanMode::Failed;
  /// Replaced index ranges [from, to] of the old prefix ++ suffix.
  std::vector<std::pair<int, int>> replaced;
  int trees = 0;
  bool suffix_from_scratch = false;
  bool global_fallback = false;
  SearchStats stats;
};

/// Result of walking one stretch of the old path.
struct Segment {
  PlanPath nodes;
  /// The stretch ended at a final state off the old path.
  bool diverted = false;
};

/// Old path from bp.k up to q(T), with illegal stretches replaced by tree
/// paths toward later breakpoints, q(T) or any live final state. Empty when
/// a tree fails (global replanning is then required).
std::optional<Segment> revise_prefix(const Breakpoints& bp, const PlanContext& ctx, const ReplanOptions& options,
                                     ReplanReport& report);

/// Cycle through q(T) (returned as q(T+1..T+K') ending at q(T)). Tries the
/// old suffix first, then a fresh cycle around q(T).
std::optional<PlanPath> revise_suffix(const Breakpoints& bp, const PlanContext& ctx, const ReplanOptions& options,
                                      ReplanReport& report);

/// New lasso from `current` (its label is not read).
std::optional<PrefixSuffixPlan> global_replan(const PlanNode& current, const PlanContext& ctx,
                                              const ReplanOptions& options, SearchStats* stats = nullptr);

/// Revises `plan` after a repair. `k` is the index of the node the team is
/// at; `affected` are the repaired transitions. The context must be built
/// from the repaired automaton and the post-failure world. The returned
/// plan starts at the current node.
std::optional<PrefixSuffixPlan> replan(const PrefixSuffixPlan& plan, int k, const std::vector<Edge>& affected,
                                       const PlanContext& ctx, const ReplanOptions& options, ReplanReport& report);

}  // namespace rtlp
