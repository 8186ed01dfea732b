#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "oracles.hpp"

#include <rectlab/cli.hpp>

using namespace rectlab;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, bool with_cache = true) {
  args.insert(args.begin(), "rectlab");
  if (with_cache && args.size() > 1 && (args[1] == "verify" || args[1] == "verify-structural" || args[1] == "scan" || args[1] == "lhs")) {
    args.push_back("--cache-dir");
    args.push_back(RECTLAB_TEST_CACHE);
  }
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json without_millis(nlohmann::json j) {
  if (j.is_object()) {
    j.erase("millis");
    for (auto& [key, val] : j.items()) val = without_millis(val);
  } else if (j.is_array()) {
    for (auto& val : j) val = without_millis(val);
  }
  return j;
}

}  // namespace

TEST(Cli, VerifyPassesWithExitZero) {
  const auto r = run({"verify", "--identity", "rect-paths", "--m", "2", "--n", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "pass");
  EXPECT_EQ(j.at("label"), "verified");
  EXPECT_EQ(j.at("hilbert").at("lhs"), "q^2 + q*t + 3*q + t + 2");
}

TEST(Cli, PerturbationExitsOne) {
  const auto r = run({"verify", "--identity", "rect-shuffle", "--m", "2", "--n", "3", "--self-test-perturb"});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "fail");
  EXPECT_TRUE(j.contains("witness"));
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"verify", "--identity", "rect-paths", "--m", "0", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"verify", "--identity", "no-such", "--m", "2", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"verify", "--m", "2", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"verify", "--identity", "rect-paths", "--m", "2", "--n", "3", "--mode", "fast"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"stats", "--path", "NXE"}).code, 2);
  EXPECT_EQ(run({"stats", "--path", "NNENE", "--labels", "2,1,3"}).code, 2);
  const auto q1 = run({"verify", "--identity", "delta-dyck-q1", "--m", "1", "--n", "2", "--k", "2", "--mode", "modular"});
  EXPECT_EQ(q1.code, 2);
  EXPECT_NE(q1.err.find("exact mode only"), std::string::npos);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, StatsOfLabelledPath) {
  const auto r = run({"stats", "--path", "NNENEENNENNE", "--labels", "2,3,1,2,4,3,4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("stats").at("dinv"), 3);
  EXPECT_EQ(j.at("stats").at("area"), 3);
  EXPECT_EQ(j.at("stats").at("tdinv"), 4);
  const auto inline_labels = nlohmann::json::parse(run({"stats", "--path", "NNENEENNENNE|2,3,1,2,4,3,4"}).out);
  EXPECT_EQ(inline_labels.at("stats"), j.at("stats"));
}

TEST(Cli, StatsVerboseIncludesSweep) {
  const auto j = nlohmann::json::parse(run({"stats", "--path", "ENENNENENEEE", "-v"}).out);
  EXPECT_EQ(j.at("sweep").at("points").size(), 17u);
  EXPECT_FALSE(j.at("stats").contains("tdinv"));
}

TEST(Cli, DeterministicJsonApartFromTiming) {
  const std::vector<std::string> args{"verify", "--identity", "rect-shuffle", "--m", "3", "--n", "2", "--mode", "modular", "--seed", "9"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(without_millis(nlohmann::json::parse(a.out)).dump(), without_millis(nlohmann::json::parse(b.out)).dump());
}

TEST(Cli, CsvOutput) {
  const auto r = run({"scan", "--identity", "rect-paths", "--max-semiperimeter", "4", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, csv_header());
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_NE(line.find(",pass,verified,"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 6);
}

TEST(Cli, PrettyOutputShowsBothSeries) {
  const auto r = run({"verify", "--identity", "rect-paths", "--m", "2", "--n", "3", "--hilbert", "--format", "pretty"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("operator side Hilbert series: q^2 + q*t + 3*q + t + 2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("paths side Hilbert series:    q^2 + q*t + 3*q + t + 2"), std::string::npos) << r.out;
}

TEST(Cli, StructuralReports) {
  const auto r = run({"verify-structural", "--m", "4", "--n", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.at("reports").size(), 3u);
  EXPECT_EQ(j.at("reports")[2].at("verdict"), "skipped");
}

TEST(Cli, GoldenOutputs) {
  EXPECT_EQ(run({"gf", "--m", "1", "--n", "2", "--dyck"}).out,
            "{\"basis\":\"m\",\"coefficients\":{\"[1,1]\":\"1\"},\"counts\":{\"labellings\":1,\"paths\":1},\"dyck_only\":true,\"k\":0,\"m\":1,"
            "\"n\":2,\"schema\":1}\n");
  EXPECT_EQ(run({"enumerate", "--m", "2", "--n", "3"}).out,
            "{\"count\":4,\"dyck_only\":false,\"k\":0,\"m\":2,\"n\":3,\"paths\":["
            "{\"area\":1,\"dinv_shift\":1,\"maxtdinv\":0,\"path\":\"ENNNE\"},"
            "{\"area\":0,\"dinv_shift\":0,\"maxtdinv\":2,\"path\":\"NENNE\"},"
            "{\"area\":0,\"dinv_shift\":-1,\"maxtdinv\":2,\"path\":\"NNENE\"},"
            "{\"area\":1,\"dinv_shift\":0,\"maxtdinv\":0,\"path\":\"NNNEE\"}],\"schema\":1}\n");
}

TEST(Cli, GfMatchesLibrary) {
  const auto j = nlohmann::json::parse(run({"gf", "--m", "2", "--n", "3"}).out);
  const auto lib = comb_gf(PathFamily::all, 2, 3, 0).gf;
  EXPECT_EQ(j.at("coefficients").dump(), detail::symfunc_json(lib));
  EXPECT_EQ(run({"gf", "--m", "3", "--n", "4", "--labelling-budget", "5"}).code, 1);
}

TEST(Cli, LhsOfShuffle) {
  const auto r = run({"lhs", "--identity", "rect-shuffle", "--m", "1", "--n", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("coefficients").dump(), "{\"[1]\":\"1\"}");
  EXPECT_EQ(run({"lhs", "--identity", "cdinv-theorem", "--m", "2", "--n", "3"}).code, 2);
}

TEST(Cli, OutFileAndCacheEnvironment) {
  const auto dir = std::filesystem::temp_directory_path() / "rectlab-cli-test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto cache = dir / "cache";
  ::setenv("RECTLAB_CACHE_DIR", cache.c_str(), 1);
  EXPECT_EQ(resolve_cache_dir(""), cache);
  EXPECT_EQ(resolve_cache_dir("/elsewhere"), std::filesystem::path("/elsewhere"));
  const auto file = dir / "report.json";
  const auto r = run({"verify", "--identity", "rect-shuffle", "--m", "2", "--n", "2", "--out", file.string()}, false);
  ::unsetenv("RECTLAB_CACHE_DIR");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(file);
  EXPECT_EQ(nlohmann::json::parse(in).at("verdict"), "pass");
  std::filesystem::remove_all(dir);
}
