#include <gtest/gtest.h>

#include "json.hpp"

#include "cli_support.hpp"

using fiber::testing::run_cli;
using Json = nlohmann::json;

namespace {

Json json_of(const std::vector<std::string>& args) {
  const auto r = run_cli(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return Json::parse(r.out);
}

}  // namespace

// ============================================================================
// Golden output
// ============================================================================

TEST(Golden, ByteIdentical) {
  for (const auto& g : fiber::testing::golden_cases()) {
    const auto want = fiber::testing::golden(g.file);
    ASSERT_FALSE(want.empty()) << g.file;
    EXPECT_EQ(run_cli(g.args).out, want) << g.file;
  }
}

TEST(Golden, RepeatedRunsIdentical) {
  const std::vector<std::string> args{"verify", "++", "300", "9"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

// ============================================================================
// decompose
// ============================================================================

TEST(Decompose, Identity) {
  const auto j = json_of({"decompose", "++", "1", "0", "0", "0"});
  EXPECT_EQ(j["tangent"]["dt_dlambda"], 1.0);
  EXPECT_EQ(j["tangent"]["dq_dlambda"], 0.0);
  EXPECT_EQ(j["tangent"]["ds_dlambda"], 1.0);
  EXPECT_EQ(j["momentum"]["m"], 1.0);
  EXPECT_EQ(j["minimal"], true);
}

TEST(Decompose, NonMinimal) {
  const auto j = json_of({"decompose", "++", "1", "0", "0", "1"});
  EXPECT_EQ(j["minimal"], false);
  EXPECT_EQ(j["residual"], 2.0);
  EXPECT_TRUE(j["factorization"].is_null());
}

TEST(Decompose, LightlikeC2) {
  EXPECT_EQ(json_of({"decompose", "+", "1", "1"})["causal"], "lightlike");
}

TEST(Decompose, EuclideanSignatures) {
  const auto plane = json_of({"decompose", "-", "2", "1"});
  EXPECT_EQ(plane["euclidean"]["plus_1"], 5.0);
  EXPECT_EQ(plane["euclidean"]["minus_e"], 4.0);
  const auto fiber = json_of({"decompose", "-+", "1", "2", "3", "5"});
  ASSERT_TRUE(fiber["sectors"].contains("mixed"));
}

TEST(Decompose, UnicodeMinus) {
  EXPECT_EQ(json_of({"decompose", "\xE2\x88\x92+", "1", "0", "0", "0"})["signature"], "-+");
}

TEST(Decompose, Labels) {
  const auto j = json_of({"decompose", "+++", "--labels"});
  EXPECT_EQ(j["labels"].size(), 8u);
  EXPECT_EQ(j["labels"][7], "e123");
}

TEST(Decompose, Formats) {
  const auto csv = run_cli({"decompose", "+", "2", "1", "--format=csv"});
  EXPECT_EQ(csv.code, 0);
  EXPECT_NE(csv.out.find("tangent.dt_dlambda,5.0"), std::string::npos);
  const auto pretty = run_cli({"decompose", "+", "2", "1", "--format", "pretty"});
  EXPECT_EQ(pretty.code, 0);
  EXPECT_NE(pretty.out.find("dt_dlambda"), std::string::npos);
}

// ============================================================================
// verify / boost / trajectory
// ============================================================================

TEST(Verify, Passes) {
  const auto r = run_cli({"verify", "+", "1000", "1", "1e-10"});
  EXPECT_EQ(r.code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["config"]["seed"], 1);
  EXPECT_EQ(j["config"]["tolerance"], 1e-10);
}

TEST(Verify, FailureExitsOneWithReport) {
  const auto r = run_cli({"verify", "++", "100", "0", "1e-300"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(Json::parse(r.out)["pass"], false);
}

TEST(Verify, FlagsMatchPositional) {
  EXPECT_EQ(run_cli({"verify", "+", "200", "4"}).out,
            run_cli({"verify", "+", "--samples", "200", "--seed=4"}).out);
}

TEST(Boost, ExamplesPass) {
  const auto id = json_of({"boost", "++", "1", "0", "0", "0", "0.0"});
  for (const auto& [k, v] : id["residuals"].items()) EXPECT_EQ(v, 0.0) << k;

  const auto c2 = json_of({"boost", "+", "1", "0", "0.6931471805599453"});
  EXPECT_NEAR(c2["after"]["tangent"]["dt_dlambda"].get<double>(), 17.0 / 8, 1e-15);
  EXPECT_NEAR(c2["after"]["tangent"]["dq_dlambda"].get<double>(), 15.0 / 8, 1e-15);
  EXPECT_NEAR(c2["after"]["tangent"]["ds_dlambda"].get<double>(), 1.0, 1e-15);

  const auto d2 = json_of({"boost", "++", "2", "1", "1", "0.5", "1.0"});
  EXPECT_EQ(d2["pass"], true);
  EXPECT_NEAR(d2["after"]["tangent"]["ds_dlambda"].get<double>(), 6.75, 1e-12);
  EXPECT_NEAR(d2["after"]["momentum"]["m"].get<double>(), 0.75, 1e-13);
}

TEST(Trajectory, Examples) {
  const auto rest = json_of({"trajectory", "1", "0", "1", "1000"});
  EXPECT_NEAR(rest["numeric_S"].get<double>(), -1, 1e-12);
  const auto exact = json_of({"trajectory", "1", "0", "2", "1"});
  EXPECT_EQ(exact["numeric_S"], -2.0);
  const auto worked = json_of({"trajectory", "0.75", "0.5493061443340549", "1", "1000", "--ds-rate", "6.75"});
  EXPECT_NEAR(worked["numeric_S"].get<double>(), -5.0625, 1e-11);
  EXPECT_EQ(worked["pass"], true);
}

// ============================================================================
// Exit-code contract
// ============================================================================

TEST(ExitCodes, UsageErrors) {
  const std::vector<std::vector<std::string>> bad{
      {},
      {"frobnicate"},
      {"decompose", "++", "1", "0", "0"},
      {"decompose", "+x", "1", "0"},
      {"decompose", "++", "1", "0", "0", "zero"},
      {"verify", "++", "0"},
      {"verify", "++", "-5"},
      {"trajectory", "0", "0", "1", "10"},
      {"trajectory", "-1", "0", "1", "10"},
      {"trajectory", "1", "0", "1", "0"},
      {"boost", "-", "1", "0", "0.5"},
      {"boost", "++", "1", "0", "0", "0"},
      {"decompose", "+", "1", "0", "--format", "xml"},
      {"decompose", "+", "1", "0", "--bogus", "1"},
  };
  for (const auto& args : bad) {
    const auto r = run_cli(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_EQ(r.code, fiber::cli::kExitUsage) << joined;
    EXPECT_NE(r.err.find("error"), std::string::npos) << joined;
    EXPECT_TRUE(r.out.empty()) << joined;
  }
}

TEST(ExitCodes, ArityDiagnosticNamesCounts) {
  const auto r = run_cli({"decompose", "++", "1", "0", "0"});
  EXPECT_NE(r.err.find("needs 4 coefficients"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("got 3"), std::string::npos) << r.err;
}

TEST(ExitCodes, Help) {
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("usage"), std::string::npos);
}

// ============================================================================
// The installed executable
// ============================================================================

TEST(Binary, SmokeAndExitCodes) {
  const auto ok = fiber::testing::run_binary("decompose ++ 2 1 1 0.5");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, fiber::testing::golden("decompose_d2_worked.json"));
  EXPECT_EQ(fiber::testing::run_binary("decompose ++ 1 0 0").code, 2);
  EXPECT_EQ(fiber::testing::run_binary("verify ++ 100 0 1e-300").code, 1);
}
