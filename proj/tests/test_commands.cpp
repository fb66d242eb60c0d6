#include <gtest/gtest.h>

#include <cmath>

#include "loopforge/commands.hpp"
#include "loopforge/errors.hpp"

using namespace loopforge;

TEST(Commands, EnumerateSingleCell) {
  const json out = cmd_enumerate({{1, 2, 1.0, false, false, 1, 1.0}, true});
  EXPECT_EQ(out["census"]["size"], 3);
  EXPECT_EQ(out["census"]["oracle_equal"], true);
  EXPECT_EQ(out["schema_version"], kSchemaVersion);
  EXPECT_EQ(out["manifest"]["command"], "enumerate");
}

TEST(Commands, EnumerateCensus) {
  const json out = cmd_enumerate({{2, 1, 1.0, false, false, 1, 1.0}, false});
  EXPECT_EQ(out["census"]["size"], 14);
  EXPECT_EQ(out["census"]["by_volume"], json({{"0", 1}, {"1", 4}, {"2", 4}, {"3", 4}, {"4", 1}}));
}

TEST(Commands, EntropySingleCellBothMethods) {
  EntropyArgs a;
  a.model = {1, 2, 1.0, false, false, 1, 1.0};
  a.cut.text = "links:2,0";
  const json out = cmd_entropy(a);
  ASSERT_EQ(out["reports"].size(), 2u);
  for (const auto& r : out["reports"]) EXPECT_NEAR(r["s_nats"].get<double>(), std::log(3.0), 1e-12);
}

TEST(Commands, CutSyntax) {
  const LatticeGeom g(3);
  EXPECT_EQ(resolve_cut(g, {"vertical:1", "A"}).boundary_links, 3);
  EXPECT_THROW(resolve_cut(g, {"vertical:3", "A"}), UsageError);
  EXPECT_THROW(resolve_cut(g, {"links:1,x", "A"}), UsageError);
  EXPECT_THROW(resolve_cut(g, {"links:99", "A"}), ParseError);
}

TEST(Commands, UsageErrors) {
  EntropyArgs a;
  a.model = {2, 2, 1.0, true, false, 1, 1.0};
  a.cut.text = "vertical:1";
  a.method = "labels";
  EXPECT_THROW(cmd_entropy(a), UsageError);
  EXPECT_THROW(cmd_enumerate({{2, 2, 1.0, true, true, 1, 1.0}, false}), UsageError);
  EXPECT_THROW(cmd_motzkin({8, 2, 1.0, "9", ""}), UsageError);
}

TEST(Commands, StripTimestampsOnlyRemovesTimestamps) {
  const json m = make_manifest("x", {{"a", 1}}, 2, "colored", std::nullopt, {}, 1.5);
  const json s = strip_timestamps(m);
  EXPECT_FALSE(s.contains("timestamp"));
  EXPECT_EQ(s["parameters"]["a"], 1);
  EXPECT_EQ(s["tool_version"], kToolVersion);
}

TEST(Commands, MotzkinCsv) {
  const std::string csv = cmd_motzkin({6, 1, 1.0, "all", ""});
  EXPECT_EQ(csv.rfind("# manifest: ", 0), 0u);
  const auto body = csv.substr(csv.find('\n') + 1);
  EXPECT_EQ(body.rfind("len,d,u,cut,s_labels,s_svd,label_count\n", 0), 0u);
  EXPECT_EQ(std::count(body.begin(), body.end(), '\n'), 1 + 5);
  const std::string sweep = cmd_motzkin({4, 2, 1.5, "half", "len:4:8:2"});
  EXPECT_EQ(std::count(sweep.begin(), sweep.end(), '\n'), 2 + 3);
}

TEST(Commands, DeterministicGroundstate) {
  const GroundstateArgs a{{2, 2, 1.2, false, false, 1, 1.0}, ""};
  EXPECT_EQ(strip_timestamps(cmd_groundstate(a)).dump(), strip_timestamps(cmd_groundstate(a)).dump());
}
