#include <gtest/gtest.h>

#include <fstream>

#include "gsv/cli.hpp"

using namespace gsv;
using namespace gsv::cli;

namespace {

RunConfig config(Command c, int r, int s) {
  RunConfig cfg;
  cfg.command = c;
  cfg.r = r;
  cfg.s = s;
  cfg.sampleCount = 5;
  return cfg;
}

Json readJson(const std::string& name) {
  std::ifstream in(std::string(GSV_DATA_DIR) + "/points/" + name);
  return Json::parse(in);
}

} // namespace

TEST(Canonical, Line) {
  Report rep = cmdCanonical(config(Command::Canonical, 1, 2));
  EXPECT_EQ(rep.verdict, Verdict::Ok);
  EXPECT_EQ(exitCode(rep.verdict), 0);
  const Json& c = rep.payload;
  ASSERT_EQ(c["pairs"].size(), 1U);
  EXPECT_EQ(c["pairs"][0]["gluing"], -1);
  EXPECT_EQ(c["pairs"][0]["I"], Json::array({1}));
  EXPECT_EQ(c["pairs"][0]["J"], Json::array({2}));
  EXPECT_EQ(c["pairs"][0]["detFormulaMatched"], true);
  EXPECT_EQ(c["verdict"], "CANONICAL_TRIVIAL");
  EXPECT_EQ(c["spec"]["r"], 1);
}

TEST(Canonical, TwoByThree) {
  Report rep = cmdCanonical(config(Command::Canonical, 2, 3));
  EXPECT_EQ(rep.verdict, Verdict::Ok);
  EXPECT_EQ(rep.payload["pairs"].size(), 3U);
  EXPECT_EQ(rep.payload["cocycleTriplesChecked"], 1);
  EXPECT_EQ(rep.payload["numericCrossCheck"]["ok"], true);
}

TEST(Canonical, AdjacentScope) {
  RunConfig cfg = config(Command::Canonical, 2, 4);
  cfg.pairScope = PairScope::Adjacent;
  Report rep = cmdCanonical(cfg);
  EXPECT_EQ(rep.verdict, Verdict::Ok);
  EXPECT_EQ(rep.payload["pairs"].size(), 12U);
  EXPECT_EQ(rep.payload["pairScope"], "adjacent");
}

TEST(Canonical, UsageErrorForBadSpec) { EXPECT_THROW(cmdCanonical(config(Command::Canonical, 3, 2)), InvalidSpec); }

TEST(Canonical, BudgetRefusal) {
  Report rep = cmdCanonical(config(Command::Canonical, 3, 6));
  EXPECT_EQ(rep.verdict, Verdict::BudgetExceeded);
  EXPECT_EQ(exitCode(rep.verdict), 2);
  RunConfig cfg = config(Command::Canonical, 2, 3);
  cfg.timeBudgetSeconds = 0;
  EXPECT_EQ(cmdCanonical(cfg).verdict, Verdict::BudgetExceeded);
}

TEST(Weights, Examples) {
  Report a = cmdWeights(config(Command::Weights, 1, 2));
  EXPECT_EQ(a.verdict, Verdict::Ok);
  EXPECT_EQ(a.payload["tangentWeightCount"], 3);
  EXPECT_EQ(a.payload["canonicalWeight"], Json::array({0, 0}));
  EXPECT_EQ(a.payload["pairing"], "RECIPROCAL_PAIRS_OK");
  EXPECT_EQ(a.payload["verdict"], "THEOREM1_OK");
  Report b = cmdWeights(config(Command::Weights, 4, 6));
  EXPECT_EQ(b.payload["tangentWeightCount"], 32);
  EXPECT_EQ(b.payload["canonicalWeight"], Json(std::vector<long>(6, 0)));
  EXPECT_EQ(b.payload["basePointIsWeightVector"], false);
  EXPECT_EQ(toJson(cmdWeights(config(Command::Weights, 4, 6)), false).dump(), toJson(b, false).dump());
}

TEST(Orbit, BasePoint) {
  Report rep = cmdOrbit(config(Command::Orbit, 1, 1), readJson("base_1_2.json"));
  EXPECT_EQ(rep.verdict, Verdict::Ok);
  EXPECT_EQ(rep.payload["witness"]["A"], Json::array({Json::array({"1"})}));
  EXPECT_EQ(rep.payload["roundTrip"], true);
}

TEST(Orbit, WorkedExample) {
  Report rep = cmdOrbit(config(Command::Orbit, 1, 1), readJson("worked_1_2.json"));
  EXPECT_EQ(rep.verdict, Verdict::Ok);
  Json expected = Json::array({Json::array({"1/2", "3"}), Json::array({"0", "-2"})});
  EXPECT_EQ(rep.payload["witness"]["B"], expected);
  EXPECT_EQ(rep.payload["jacobianRank"], 1);
}

TEST(Orbit, OffVariety) {
  Report rep = cmdOrbit(config(Command::Orbit, 1, 1), readJson("off_variety_1_2.json"));
  EXPECT_EQ(rep.verdict, Verdict::Failed);
  EXPECT_EQ(exitCode(rep.verdict), 1);
  EXPECT_EQ(rep.payload["violated"]["row"], 1);
  EXPECT_EQ(rep.payload["violated"]["col"], 1);
  EXPECT_EQ(rep.payload["violated"]["residual"], "1");
}

TEST(Orbit, TwoByThreePoint) {
  Report rep = cmdOrbit(config(Command::Orbit, 1, 1), readJson("point_2_3.json"));
  EXPECT_EQ(rep.verdict, Verdict::Ok);
  EXPECT_EQ(rep.spec, GsvSpec(2, 3));
}

TEST(Atlas, Report) {
  Report rep = cmdAtlas(config(Command::Atlas, 2, 3));
  EXPECT_EQ(rep.verdict, Verdict::Ok);
  EXPECT_EQ(rep.payload["charts"].size(), 3U);
  EXPECT_EQ(rep.payload["charts"][0]["freeCoords"].size(), 8U);
  EXPECT_EQ(rep.payload["adjacentTransitions"].size(), 3U);
  ASSERT_EQ(rep.errata.size(), 2U);
  EXPECT_EQ(rep.errata[1].id, "coordinate-name");
}

TEST(Sweep, UpToThree) {
  RunConfig cfg = config(Command::Sweep, 1, 3);
  Report rep = cmdSweep(cfg);
  EXPECT_EQ(rep.verdict, Verdict::Ok);
  EXPECT_EQ(rep.payload["entries"].size(), 6U);
  for (const auto& e : rep.payload["entries"]) {
    EXPECT_EQ(e["weights"], "THEOREM1_OK");
    EXPECT_EQ(e["canonical"], "CANONICAL_TRIVIAL");
  }
  ASSERT_EQ(rep.errata.size(), 2U);
  EXPECT_EQ(toJson(rep, false)["errata"].size(), 2U);
}

TEST(Sweep, MarksSpecsOutsideTheBudget) {
  RunConfig cfg = config(Command::Sweep, 1, 3);
  cfg.budget.maxCharts = 2;
  Report rep = cmdSweep(cfg);
  EXPECT_EQ(rep.verdict, Verdict::Ok);
  EXPECT_EQ(rep.payload["canonicalSkippedBudget"], 2);
}

TEST(Sweep, Deterministic) {
  RunConfig cfg = config(Command::Sweep, 1, 3);
  cfg.seed = 99;
  EXPECT_EQ(toJson(cmdSweep(cfg), false).dump(), toJson(cmdSweep(cfg), false).dump());
}

TEST(Report, TimingOnlyWhenRequested) {
  Report rep = cmdWeights(config(Command::Weights, 1, 2));
  EXPECT_FALSE(toJson(rep, false).contains("elapsedMs"));
  EXPECT_TRUE(toJson(rep, true).contains("elapsedMs"));
  Json j = toJson(rep, false);
  EXPECT_EQ(j["toolVersion"], kToolVersion);
  EXPECT_EQ(j["command"], "weights");
  EXPECT_EQ(j["verdict"], "OK");
  EXPECT_NE(toText(rep).find("weights GSV(1,2): OK"), std::string::npos);
}
