#include <gtest/gtest.h>

#include "support.hpp"

using namespace rtlp;
using namespace rtlp::testing;

TEST(Hoa, CorpusRoundTrip) {
  const PredicateTable& table = letter_table();
  std::mt19937_64 rng(21);
  for (const auto& text : corpus_formulas()) {
    const Nba nba = translate_ltl(parse_letters(text));
    const std::string hoa = export_hoa(nba, table, text);
    const Nba back = import_hoa(hoa, table);
    EXPECT_EQ(export_hoa(back, table, text), hoa) << text;
    EXPECT_EQ(back.num_states(), nba.num_states());
    EXPECT_EQ(back.initial(), nba.initial());
    EXPECT_EQ(back.final(), nba.final());
    for (int i = 0; i < 200; ++i) {
      const LassoWord w = random_lasso(rng, 6, 3, 3);
      ASSERT_EQ(accepting_run_check(back, w), accepting_run_check(nba, w)) << text;
    }
  }
}

TEST(Hoa, FixtureRoundTrip) {
  for (const auto& name : fixture_names()) {
    if (name == "aerial") continue;  // large; covered by the acceptance run
    const Fixture& fx = fixture(name);
    const std::string hoa = export_hoa(fx.mission.nba, fx.mission.table, name);
    EXPECT_EQ(export_hoa(import_hoa(hoa, fx.mission.table), fx.mission.table, name), hoa) << name;
  }
}

TEST(Hoa, HeaderShape) {
  const std::string hoa = export_hoa(translate_ltl(parse_letters("G F a")), letter_table(), "gfa");
  EXPECT_EQ(hoa.rfind("HOA: v1\n", 0), 0U);
  EXPECT_NE(hoa.find("Acceptance: 1 Inf(0)"), std::string::npos);
  EXPECT_NE(hoa.find("AP: 1 \"a\""), std::string::npos);
  EXPECT_NE(hoa.find("--END--"), std::string::npos);
}

TEST(Hoa, MalformedInputIsRejected) {
  const PredicateTable& table = letter_table();
  const std::string good = export_hoa(translate_ltl(parse_letters("a U b")), table);
  EXPECT_THROW(import_hoa("HOA: v1\nStates: 1\n--BODY--\nState: 3\n--END--\n", table), ParseError);
  EXPECT_THROW(import_hoa(good.substr(0, good.size() / 2), table), ParseError);
  std::string unknown = good;
  unknown.replace(unknown.find("\"a\""), 3, "\"zz\"");
  EXPECT_ANY_THROW(import_hoa(unknown, table));
}
