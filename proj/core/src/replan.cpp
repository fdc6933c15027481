#include "rtlp/replan.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rtlp {

int current_index(const PrefixSuffixPlan& plan, int t) {
  if (t < 0) throw std::out_of_range("negative plan time");
  if (t <= plan.T()) return t;
  if (plan.K() == 0) throw std::out_of_range("plan has no suffix");
  return plan.T() + 1 + (t - plan.T() - 1) % plan.K();
}

Breakpoints compute_breakpoints(const PrefixSuffixPlan& plan, int k, const std::vector<Edge>& affected) {
  Breakpoints bp;
  bp.path = plan.concat();
  bp.T = plan.T();
  bp.K = plan.K();
  bp.k = k;
  const int last = static_cast<int>(bp.path.size()) - 1;
  if (k < 0 || k > last) throw std::out_of_range("current index outside the plan");
  const std::set<Edge> e(affected.begin(), affected.end());
  auto q = [&](int i) { return bp.path[static_cast<std::size_t>(i)].nba_state; };
  auto moves_on = [&](int a, int b) { return q(a) != q(b) && e.count(Edge{q(a), q(b)}) != 0; };
  for (int i = k; i <= last; ++i) {
    const bool hit = (i < last && moves_on(i, i + 1)) || (i > 0 && moves_on(i - 1, i));
    if (!hit) continue;
    (i <= bp.T ? bp.pre : bp.suf).push_back(i);
  }
  // The current node always leads its list.
  auto& lead = k <= bp.T ? bp.pre : bp.suf;
  if (!e.empty() && (lead.empty() || lead.front() != k)) lead.insert(lead.begin(), k);
  return bp;
}

const char* mode_name(ReplanMode m) {
  switch (m) {
    case ReplanMode::Unchanged: return "unchanged";
    case ReplanMode::Local: return "local";
    case ReplanMode::Global: return "global";
    case ReplanMode::Failed: return "failed";
  }
  return "?";
}

namespace {

// Follows path[from..to], keeping hops that are still legal and growing a
// tree from the last good node wherever a hop is not. Trees aim at later
// breakpoints, path[to], and (when `finals` is non-empty) final states.
std::optional<Segment> walk(const Breakpoints& bp, int from, int to, const std::vector<int>& breakpoints,
                            const std::set<StateId>& finals, const PlanContext& ctx, const ReplanOptions& options,
                            ReplanReport& report) {
  const PlanPath& path = bp.path;
  auto at = [&path](int i) -> const PlanNode& { return path[static_cast<std::size_t>(i)]; };
  Segment seg;
  seg.nodes.push_back(at(from));
  int j = from;
  while (j < to) {
    if (ctx.legal_hop(at(j), at(j + 1))) {
      seg.nodes.push_back(at(j + 1));
      ++j;
      continue;
    }
    if (report.stats.iterations >= options.total_budget) return std::nullopt;
    SearchGoal goal;
    goal.finals = finals;
    std::vector<int> targets;
    for (int s : breakpoints)
      if (s > j && s < to) targets.push_back(s);
    targets.push_back(to);
    for (int s : targets) goal.connect.push_back(at(s));
    SearchOptions so;
    so.budget = std::min(options.budget, options.total_budget - report.stats.iterations);
    so.seed = splitmix(options.seed ^ (0x7ee5ULL * static_cast<std::uint64_t>(report.trees + 1)));
    ++report.trees;
    auto res = plan_prefix({seg.nodes.back()}, ctx, goal, so, &report.stats);
    if (!res) return std::nullopt;
    seg.nodes.insert(seg.nodes.end(), res->path.begin() + 1, res->path.end());
    if (res->goal_index < 0) {
      report.replaced.emplace_back(j, to);
      seg.diverted = true;
      return seg;
    }
    const int s = targets[static_cast<std::size_t>(res->goal_index)];
    report.replaced.emplace_back(j, s);
    seg.nodes.push_back(at(s));
    j = s;
  }
  return seg;
}

}  // namespace

std::optional<Segment> revise_prefix(const Breakpoints& bp, const PlanContext& ctx, const ReplanOptions& options,
                                     ReplanReport& report) {
  if (bp.k > bp.T) throw std::invalid_argument("the team is already in the suffix");
  return walk(bp, bp.k, bp.T, bp.pre, ctx.live_finals(), ctx, options, report);
}

std::optional<PlanPath> revise_suffix(const Breakpoints& bp, const PlanContext& ctx, const ReplanOptions& options,
                                      ReplanReport& report) {
  const int last = bp.T + bp.K;
  std::vector<int> breakpoints;
  for (int s : bp.suf)
    if (s > bp.T) breakpoints.push_back(s);
  if (bp.K > 0) {
    if (auto seg = walk(bp, bp.T, last, breakpoints, {}, ctx, options, report))
      return PlanPath(seg->nodes.begin() + 1, seg->nodes.end());
  }
  if (report.stats.iterations >= options.total_budget) return std::nullopt;
  SearchOptions so;
  so.budget = std::min(options.budget, options.total_budget - report.stats.iterations);
  so.seed = splitmix(options.seed ^ 0x5cf1ULL);
  ++report.trees;
  report.suffix_from_scratch = true;
  return plan_suffix(bp.path[static_cast<std::size_t>(bp.T)], ctx, so, &report.stats);
}

std::optional<PrefixSuffixPlan> global_replan(const PlanNode& current, const PlanContext& ctx,
                                              const ReplanOptions& options, SearchStats* stats) {
  PlanOptions po;
  po.budget = options.budget;
  po.seed = splitmix(options.seed ^ 0x610bULL);
  po.attempts = options.attempts;
  return plan_from(ctx, current, po, stats);
}

std::optional<PrefixSuffixPlan> replan(const PrefixSuffixPlan& plan, int k, const std::vector<Edge>& affected,
                                       const PlanContext& ctx, const ReplanOptions& options, ReplanReport& report) {
  report = ReplanReport{};
  const Breakpoints bp = compute_breakpoints(plan, k, affected);
  const PlanNode& current = bp.path[static_cast<std::size_t>(k)];

  auto local = [&]() -> std::optional<PrefixSuffixPlan> {
    std::optional<Segment> head;
    if (k <= bp.T) {
      head = revise_prefix(bp, ctx, options, report);
    } else {
      // Finish the current suffix pass, then loop as before.
      std::vector<int> breakpoints;
      for (int s : bp.suf)
        if (s > k) breakpoints.push_back(s);
      head = walk(bp, k, bp.T + bp.K, breakpoints, ctx.live_finals(), ctx, options, report);
    }
    if (!head) return std::nullopt;
    std::optional<PlanPath> tail;
    if (head->diverted) {
      SearchOptions so;
      so.budget = std::min(options.budget, std::max(0, options.total_budget - report.stats.iterations));
      so.seed = splitmix(options.seed ^ 0xd1ffULL);
      ++report.trees;
      report.suffix_from_scratch = true;
      if (so.budget > 0) tail = plan_suffix(head->nodes.back(), ctx, so, &report.stats);
    } else {
      tail = revise_suffix(bp, ctx, options, report);
    }
    if (!tail) return std::nullopt;
    return PrefixSuffixPlan{std::move(head->nodes), std::move(*tail)};
  };

  if (auto p = local()) {
    report.mode = report.trees == 0 ? ReplanMode::Unchanged : ReplanMode::Local;
    return p;
  }
  report.global_fallback = true;
  auto p = global_replan(current, ctx, options, &report.stats);
  report.mode = p ? ReplanMode::Global : ReplanMode::Failed;
  return p;
}

}  // namespace rtlp
