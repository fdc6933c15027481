#include <gtest/gtest.h>

#include "support.hpp"

using namespace rtlp;
using namespace rtlp::testing;

namespace {

const MissionReport& scenario1_run() {
  static const MissionReport r = run_mission(fixture("scenario1").sc);
  return r;
}

}  // namespace

TEST(Trace, TextRoundTrip) {
  const Trace& t = scenario1_run().trace;
  const std::string text = write_trace(t);
  const Trace back = parse_trace(text);
  EXPECT_EQ(back.steps, t.steps);
  EXPECT_EQ(back.caps, t.caps);
  EXPECT_EQ(write_trace(back), text);
  EXPECT_EQ(read_trace(text).steps, t.steps);
}

TEST(Trace, JsonRoundTrip) {
  const Trace& t = scenario1_run().trace;
  const std::string text = write_trace_json(t);
  EXPECT_EQ(text.front(), '{');
  const Trace back = read_trace(text);
  EXPECT_EQ(back.steps, t.steps);
  EXPECT_EQ(write_trace_json(back), text);
  EXPECT_EQ(write_trace(back), write_trace(t));
}

TEST(Trace, ExecutedTraceIsAccepted) {
  const MissionReport& r = scenario1_run();
  const Fixture& fx = fixture("scenario1");
  const TraceVerdict v = check_trace(r.trace, r.final_nba, r.table, *fx.sc.env);
  EXPECT_TRUE(v.ok()) << v.problem;
}

TEST(Trace, TamperingIsRejected) {
  const MissionReport& r = scenario1_run();
  const Environment& env = *fixture("scenario1").sc.env;
  {
    Trace t = r.trace;
    t.steps[2].node.positions[0].x += 2;
    const TraceVerdict v = check_trace(t, r.final_nba, r.table, env);
    EXPECT_FALSE(v.ok());
    EXPECT_FALSE(v.dynamics);
  }
  {
    Trace t = r.trace;
    t.steps.erase(t.steps.begin() + 1);
    EXPECT_FALSE(check_trace(t, r.final_nba, r.table, env).well_formed);
  }
  {
    // Drop every skill application: the mission cannot be met.
    Trace t = r.trace;
    for (auto& s : t.steps)
      for (auto& a : s.node.actions) a = kNoSkill;
    EXPECT_FALSE(check_trace(t, r.final_nba, r.table, env).accepted);
  }
  {
    // A robot applying a skill it no longer has.
    Trace t = r.trace;
    t.caps[2] = CapabilityVector::of({kMobility});
    for (auto& s : t.steps)
      if (s.phase != Phase::History) s.node.actions[2] = 3;
    EXPECT_FALSE(check_trace(t, r.final_nba, r.table, env).ok());
  }
}

TEST(Trace, ParseErrorsCarryLine) {
  EXPECT_THROW(parse_trace(""), TraceError);
  try {
    parse_trace("rtlp-trace 1\nrobots 1\ncaps 1 1\nstep 0 P 0 1 2\n");
    FAIL();
  } catch (const TraceError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  EXPECT_THROW(parse_trace("rtlp-trace 2\n"), TraceError);
  EXPECT_THROW(parse_trace_json("{\"format\":\"rtlp-trace\"}"), TraceError);
}
