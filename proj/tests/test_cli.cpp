#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "purecorr/cli_runner.hpp"

using namespace purecorr;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, EpBell) {
  const auto j = run_json({"ep", "--family", "bell", "--cut", "A:B", "--restarts", "2"});
  EXPECT_NEAR(j["result"]["estimate"].get<double>(), 1.0, 1e-6);
  for (const char* key : {"tool", "version", "config", "seed", "tolerances", "state", "timestamp"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["version"], kVersion);
  EXPECT_EQ(j["state"]["family"], "bell");
}

TEST(Cli, EpGhzMixtureCertificate) {
  const auto j = run_json({"ep", "--family", "ghz-mixture", "--params", "0.5,0.5,0.5", "--cut", "A:BC",
                           "--restarts", "2"});
  EXPECT_EQ(j["result"]["certificate"]["kind"], "bound-coincidence");
  EXPECT_NEAR(j["result"]["certificate"]["value"].get<double>(), 1.0, 1e-10);
}

TEST(Cli, EpWernerDeterministic) {
  const std::vector<std::string> args{"ep", "--family", "werner", "--params", "0.8", "--restarts", "4", "--seed", "7"};
  auto a = run_json(args), b = run_json(args);
  a.erase("timestamp");
  b.erase("timestamp");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Cli, DcBell) {
  const auto j = run_json({"dc", "--family", "bell", "--restarts", "1"});
  EXPECT_NEAR(j["result"]["estimate"].get<double>(), 1.0, 1e-6);
}

TEST(Cli, AuditUnknownClaimListsIds) {
  const auto r = run({"audit", "no-such-claim"});
  EXPECT_EQ(r.code, 2);
  for (const auto& id : cli::claim_ids()) EXPECT_NE(r.err.find(id), std::string::npos) << id;
}

TEST(Cli, AuditThm1W) {
  const auto j = run_json({"audit", "thm1-polygamy-pure", "--family", "w", "--n", "3"});
  EXPECT_LT(j["records"][0]["details"]["equality_residual"].get<double>(), 1e-9);
}

TEST(Cli, AuditDcMonogamyGhz) {
  const auto j = run_json({"audit", "dc-monogamy", "--family", "ghz", "--seed", "11", "--restarts", "2"});
  EXPECT_LT(j["records"][0]["details"]["equality_residual"].get<double>(), 5e-3);
}

TEST(Cli, AuditFig1GapReportsViolationsWithExitOne) {
  const auto r = run({"audit", "fig1-gap", "--grid", "11x11", "--format", "csv"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("claim_id,family,p,a,lhs,rhs,margin,verdict,certification,seed"), std::string::npos);
  EXPECT_NE(r.out.find("# version:"), std::string::npos);
}

TEST(Cli, AuditInconclusiveExitsZeroWithFlag) {
  const auto r = run({"audit", "prop3-polygamy", "--family", "product", "--n", "3"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["summary"]["inconclusive_flag"].get<bool>());
}

TEST(Cli, AuditWClosedFormAllN) {
  const auto j = run_json({"audit", "w-closed-form"});
  EXPECT_EQ(j["records"].size(), 6u);
}

TEST(Cli, SweepFig2Json) {
  const auto j = run_json({"sweep", "--family", "fig2", "--grid", "11"});
  EXPECT_EQ(j["result"]["rows"].size(), 11u);
}

TEST(Cli, ValidateFileAndRejections) {
  const auto dir = fs::temp_directory_path();
  const auto good = dir / "purecorr_cli_good.json";
  std::ofstream(good) << R"({"dims":[2,2],"re":[0.25,0,0,0,0,0.25,0,0,0,0,0.25,0,0,0,0,0.25],"im":[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]})";
  const auto j = run_json({"validate", "--input", good.string()});
  EXPECT_NEAR(j["result"]["entropy"].get<double>(), 2.0, 1e-12);
  const auto bad = dir / "purecorr_cli_bad.json";
  std::ofstream(bad) << R"({"dims":[2],"re":[0.5,0.2,0.1,0.5],"im":[0,0,0,0]})";
  const auto r = run({"validate", "--input", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Hermiticity"), std::string::npos);
}

TEST(Cli, ErrorCodes) {
  EXPECT_EQ(run({"ep", "--family", "nope"}).code, 2);
  EXPECT_EQ(run({"ep", "--bogus-flag"}).code, 2);
  EXPECT_EQ(run({"ep", "--family", "werner", "--ancilla", "1,1"}).code, 2);
  EXPECT_EQ(run({"ep", "--family", "werner", "--cut", "A:Q"}).code, 2);
  EXPECT_EQ(run({"ep", "--family", "werner", "--format", "csv"}).code, 2);
  EXPECT_EQ(run({"ep", "--family", "ghz", "--n", "10", "--ancilla", "terhal", "--restarts", "1"}).code, 3);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, OutFileAndToleranceOverride) {
  const auto p = fs::temp_directory_path() / "purecorr_cli_out.json";
  const auto r = run({"audit", "w-closed-form", "--n", "4", "--out", p.string(), "--tolerance", "structure=1e-8"});
  EXPECT_EQ(r.code, 0);
  std::ifstream in(p);
  const auto j = json::parse(in);
  EXPECT_EQ(j["tolerances"]["structure"].get<double>(), 1e-8);
  EXPECT_EQ(tolerances().structure, 1e-9);  // restored after the run
  EXPECT_EQ(run({"audit", "w-closed-form", "--tolerance", "nope=1"}).code, 2);
}

#ifdef PURECORR_CLI_PATH
TEST(Cli, BinaryRuns) {
  const std::string cmd = std::string(PURECORR_CLI_PATH) + " ep --family bell --restarts 1 > /dev/null";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
}
#endif
