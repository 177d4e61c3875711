#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "zinv_cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "zinv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = zinv::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, InvertQuadratic) {
  const auto r = run({"invert", "1/(z^2+1)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("u[n-2]"), std::string::npos);
  EXPECT_NE(r.out.find("sin(1.5708*(n-1))"), std::string::npos);
}

TEST(Cli, InvertSimpleForms) {
  EXPECT_EQ(run({"invert", "1/(z-3)"}).out, "3^(n-1)*u[n-1]\n");
  EXPECT_EQ(run({"invert", "5/z^2"}).out, "5*δ[n-2]\n");
}

TEST(Cli, InvertJsonSchema) {
  const auto r = run({"invert", "(z^3+1)/(z^2+1)", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["input"], "(z^3+1)/(z^2+1)");
  ASSERT_EQ(j["poly_part"].size(), 1u);
  EXPECT_EQ(j["poly_part"][0]["power"], 1);
  ASSERT_EQ(j["terms"].size(), 1u);
  EXPECT_EQ(j["terms"][0]["kind"], "quad_pole");
  EXPECT_NEAR(j["terms"][0]["A1"].get<double>(), -1.0, 1e-14);
  EXPECT_EQ(j["warnings"].size(), 1u);
}

TEST(Cli, TableLongDivisionCsv) {
  const auto r = run({"table", "1/(z^2+1)", "--n", "6", "--method", "longdiv", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "n,x\n0,0\n1,0\n2,1\n3,0\n4,-1\n5,0\n6,1\n");
}

TEST(Cli, TableDefaults) {
  const auto r = run({"table", "z/(z-1)", "--n", "3", "--format", "csv"});
  EXPECT_EQ(r.out, "n,x\n0,1\n1,1\n2,1\n3,1\n");
}

TEST(Cli, TableProposedSquaredQuadratic) {
  const auto r = run({"table", "1/(z^2+1)^2", "--n", "8", "--method", "proposed", "--format", "json"});
  const auto v = nlohmann::json::parse(r.out)["methods"]["proposed"];
  const std::vector<double> want{0, 0, 0, 0, 1, 0, -2, 0, 3};
  ASSERT_EQ(v.size(), want.size());
  for (std::size_t n = 0; n < want.size(); ++n) EXPECT_NEAR(v[n].get<double>(), want[n], 1e-12);
}

TEST(Cli, TableAllMethods) {
  const auto r = run({"table", "1/((z-0.5)^2 (z^2+1))", "--n", "10", "--method", "all", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,proposed,longdiv,moreira,juric,residue");
}

TEST(Cli, CompareExamples) {
  auto r = run({"compare", "1/(z^2+1)", "--n", "20", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  for (const auto& p : j["pairs"]) EXPECT_LE(p["max_dev"].get<double>(), 1e-10);
  for (const auto& m : j["methods"]) EXPECT_TRUE(m.contains("millis"));

  r = run({"compare", "(2z+3)/((z^2-2z+2)^3)", "--n", "40"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, CompareFailureExitsOne) {
  const auto r = run({"compare", "(z^3+1)/(z^2+1)"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, Fuzz) {
  const auto r = run({"compare", "--fuzz", "300", "--seed", "42"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("300 cases, seed 42, 0 failures"), std::string::npos);
}

TEST(Cli, Identities) {
  const auto r = run({"identities"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("internal_summation: 0 failures (k≤6, n≤40)"), std::string::npos);
  EXPECT_NE(r.out.find("surjection: 0 failures"), std::string::npos);
  EXPECT_NE(r.out.find("convolution_vs_f0: 0 failures"), std::string::npos);
}

TEST(Cli, UsageAndParseErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"invert"}).code, 2);
  EXPECT_EQ(run({"table", "1/z", "--method", "bogus"}).code, 2);
  EXPECT_EQ(run({"table", "1/z", "--n", "-1"}).code, 2);
  const auto r = run({"invert", "1/(x+1)"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("1:4"), std::string::npos);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, BatchFile) {
  const std::string path = temp_file("zinv_batch.txt", "# comment\n1/(z^2+1)\n\nz/(z-1)  # step\n");
  const auto r = run({"table", "--batch", path, "--n", "2", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "n,x\n0,0\n1,0\n2,1\nn,x\n0,1\n1,1\n2,1\n");
}

TEST(Cli, BatchReportsBadLinesAndContinues) {
  const std::string path = temp_file("zinv_bad.txt", "1/(z^2+1)\n1/(y+1)\nz/(z-1)\n");
  const auto r = run({"invert", "--batch", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":2: parse error"), std::string::npos);
  EXPECT_NE(r.out.find("u[n-1]"), std::string::npos);
}

TEST(Cli, JsonOutputRoundTripsThroughBatch) {
  const auto first = run({"invert", "(2z+3)/((z^2-2z+2)^3)", "--format", "json"});
  const std::string path = temp_file("zinv_rt.jsonl", first.out);
  const auto second = run({"invert", "--batch", path, "--format", "json"});
  EXPECT_EQ(second.code, 0);
  EXPECT_EQ(second.out, first.out);

  const auto cmp = run({"compare", "1/(z^2+1)", "--format", "json"});
  const auto again = run({"compare", "--batch", temp_file("zinv_cmp.jsonl", cmp.out), "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(again.out)["input"], "1/(z^2+1)");
}
