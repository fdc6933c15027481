#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rtlp/nba.hpp"
#include "rtlp/planner.hpp"
#include "rtlp/world.hpp"

namespace rtlp {

/// Line-oriented execution record, version 1:
///
///   rtlp-trace 1
///   robots <N>
///   caps <robot> <skill id>...      one per robot, skills at the end of the run
///   step <t> <H|P|S> <q> (<x> <y> <action>) x N
///
/// H steps were executed under earlier plans, P steps are the prefix of the
/// plan in force (its first P step is the node the plan was rooted at) and
/// S steps are its suffix, repeated forever.
class TraceError : public std::runtime_error {
 public:
  TraceError(const std::string& what, int line);
  int line() const { return line_; }

 private:
  int line_;
};

enum class Phase : char { History = 'H', Prefix = 'P', Suffix = 'S' };

struct TraceStep {
  int time = 0;
  Phase phase = Phase::Prefix;
  PlanNode node;

  bool operator==(const TraceStep&) const = default;
};

struct Trace {
  int num_robots = 0;
  std::vector<CapabilityVector> caps;
  std::vector<TraceStep> steps;

  /// The P and S steps as a lasso plan.
  PrefixSuffixPlan plan() const;
};

/// Trace of `plan` rooted at time `root_time`, after `history`.
Trace make_trace(const std::vector<TraceStep>& history, const PrefixSuffixPlan& plan, int root_time,
                 const std::vector<CapabilityVector>& caps);

std::string write_trace(const Trace& trace);
Trace parse_trace(std::string_view text);

/// Same content as a JSON document of format "rtlp-trace".
std::string write_trace_json(const Trace& trace);
Trace parse_trace_json(std::string_view text);
/// Accepts either form.
Trace read_trace(std::string_view text);

struct TraceVerdict {
  bool well_formed = false;  // phases ordered, times consecutive, loop closes
  bool dynamics = false;     // every hop is a legal grid move
  bool accepted = false;     // P/S lasso accepted from the first P step's state
  std::string problem;       // first problem found, empty when all hold

  bool ok() const { return well_formed && dynamics && accepted; }
};

/// Checks a trace against an automaton without using any planner code.
TraceVerdict check_trace(const Trace& trace, const Nba& nba, const PredicateTable& table, const Environment& env);

}  // namespace rtlp
