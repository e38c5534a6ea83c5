#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "transgauss/cli.hpp"

namespace cli = transgauss::cli;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& leaf) {
  return (std::filesystem::temp_directory_path() / ("transgauss_test_" + leaf)).string();
}

std::string write_temp(const std::string& leaf, const std::string& text) {
  const std::string path = temp_path(leaf);
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ListAndVersion) {
  auto r = run({"list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("s3_round euclidean(4) dim=3 chi=0 v:{hopf,hopf_rot}"), std::string::npos);
  r = run({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE((r.out + r.err).find("transgauss 0.1.0"), std::string::npos);
}

TEST(Cli, VerifyPassesAndReportsChecks) {
  const auto r = run({"verify", "--scenario", "s3_round", "--resolution", "16"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("scenario"), "s3_round");
  EXPECT_NE(r.err.find("check degree_residual"), std::string::npos);
  EXPECT_NE(r.err.find("result exit=0"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run({"verify", "--scenario", "s3_round", "--resolution", "4"}).code, 2);
  EXPECT_EQ(run({"verify", "--scenario", "nowhere"}).code, 2);
  EXPECT_EQ(run({"verify", "--scenario", "s3_round", "--v", "coord1"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify", "--orientation", "3"}).code, 2);
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"degree", "--scenario", "s3_round", "--oracle", "magic"}).code, 2);
  EXPECT_EQ(run({"degree", "--scenario", "s3_round", "--oracle", "preimage", "--regular-value",
                 "1,0"})
                .code,
            2);
  const auto bad_key = write_temp("badkey.json", R"({"scenario": "s3_round", "colour": 3})");
  EXPECT_EQ(run({"verify", "--config", bad_key}).code, 2);
  const auto malformed = write_temp("malformed.json", R"({"scenario": )");
  EXPECT_EQ(run({"verify", "--config", malformed}).code, 2);
  EXPECT_EQ(run({"verify", "--config", temp_path("missing.json")}).code, 2);
}

TEST(Cli, FlatVerify) {
  const auto r = run({"verify", "--scenario", "flat_t3", "--v", "coord3", "--resolution", "8"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  for (const auto& x : j.at("integrals")) EXPECT_LT(std::abs(x.get<double>()), 1e-12);
}

TEST(Cli, DegreeWithPreimageOracle) {
  auto r = run({"degree", "--scenario", "tube_s2_r0.3", "--resolution", "16", "--oracle",
                "preimage"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j.at("degree").at("rounded"), 2);
  EXPECT_EQ(j.at("preimage").at("degree"), 2);
  EXPECT_TRUE(j.at("preimage").at("agrees").get<bool>());

  r = run({"degree", "--scenario", "s3_round", "--resolution", "12", "--orientation", "-1"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = json::parse(r.out);
  EXPECT_EQ(j.at("degree").at("rounded"), -1);
  EXPECT_EQ(j.at("orientation"), -1);
}

TEST(Cli, FoliateVerdicts) {
  auto r = run({"foliate", "--scenario", "flat_t3", "--v", "coord3", "--resolution", "8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("verdict"), "OBSTRUCTION SATISFIED, deg = 0 confirmed");
  EXPECT_NE(r.err.find("verdict: OBSTRUCTION SATISFIED"), std::string::npos);

  r = run({"foliate", "--scenario", "tube_s2_r0.3", "--resolution", "12"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("verdict"), "RANK BOUND VIOLATED (theorem silent)");

  r = run({"foliate", "--scenario", "s3_round", "--resolution", "12"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("verdict"), "RANK BOUND VIOLATED (theorem silent)");

  r = run({"foliate", "--scenario", "s3_round", "--resolution", "12", "--rank-bound", "2"});
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(json::parse(r.out).at("verdict"), "CONTRADICTION");
}

TEST(Cli, InconclusiveDegreeExitsThree) {
  const auto cfg = write_temp("strict.json", R"({"degree_tolerance": 1e-16})");
  const auto r =
      run({"degree", "--scenario", "tube_s2_r0.3", "--resolution", "8", "--config", cfg});
  EXPECT_EQ(r.code, 3) << r.err;
  const auto near = run({"degree", "--scenario", "flat_t3", "--resolution", "8", "--oracle",
                         "preimage", "--regular-value", "0,0,0,1"});
  EXPECT_EQ(near.code, 3) << near.err;
}

TEST(Cli, UnderResolvedRunExitsOne) {
  const auto r = run({"verify", "--scenario", "hyperbolic_circle_tube_r0.5", "--resolution", "12"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("FAIL"), std::string::npos);
  const auto fine = run({"verify", "--scenario", "hyperbolic_circle_tube_r0.5", "--resolution", "32"});
  EXPECT_EQ(fine.code, 0) << fine.err;
}

TEST(Cli, FlagsOverrideConfig) {
  const auto cfg = write_temp("override.json", R"({
    "command": "degree",
    "scenario": "s3_round",
    "resolution": 8,
    "orientation": 1
  })");
  auto r = run({"--config", cfg});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j.at("degree").at("rounded"), 1);
  EXPECT_EQ(j.at("resolution"), json::array({8}));

  r = run({"degree", "--config", cfg, "--orientation", "-1", "--resolution", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = json::parse(r.out);
  EXPECT_EQ(j.at("degree").at("rounded"), -1);
  EXPECT_EQ(j.at("resolution"), json::array({10}));
  EXPECT_EQ(j.at("config").at("resolution"), json::array({10}));
}

TEST(Cli, InlineScenarioFromConfig) {
  const auto cfg = write_temp("inline.json", R"({
    "scenario": {
      "name": "thin_tube",
      "ambient": {"kind": "euclidean", "dim": 4},
      "immersion": {"kind": "tube_s2", "params": {"r": 0.2}}
    },
    "v": "circle"
  })");
  const auto r = run({"verify", "--config", cfg, "--resolution", "24"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("scenario"), "thin_tube");
}

TEST(Cli, ReportsAreByteStable) {
  const std::vector<std::string> args = {"verify", "--scenario", "tube_s2_r0.3", "--v", "twist1",
                                         "--resolution", "12"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);

  const char* old = std::getenv("TRANSGAUSS_THREADS");
  const std::string saved = old ? old : "";
  setenv("TRANSGAUSS_THREADS", "1", 1);
  const auto one = run(args);
  setenv("TRANSGAUSS_THREADS", "3", 1);
  const auto three = run(args);
  if (old) {
    setenv("TRANSGAUSS_THREADS", saved.c_str(), 1);
  } else {
    unsetenv("TRANSGAUSS_THREADS");
  }
  EXPECT_EQ(one.out, three.out);
  EXPECT_EQ(one.out, a.out);
}

TEST(Cli, CsvOutput) {
  const auto r =
      run({"verify", "--scenario", "s3_round", "--resolution", "8", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# transgauss 0.1.0 verify csv v1\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("# scenario=s3_round ambient=euclidean(4) orientation=1"),
            std::string::npos);
}

TEST(Cli, ConvergenceCsvByDefault) {
  const auto r = run({"convergence", "--scenario", "s3_round", "--resolutions", "8,16"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 5u) << r.out;
  EXPECT_EQ(rows[0], "# transgauss 0.1.0 convergence csv v1");
  EXPECT_EQ(rows[2].rfind("resolution,", 0), 0u);
  EXPECT_EQ(rows[3].rfind("8,", 0), 0u);
  EXPECT_EQ(rows[4].rfind("16,", 0), 0u);
  EXPECT_NE(r.err.find("decay PASS"), std::string::npos);
  EXPECT_EQ(run({"convergence", "--scenario", "s3_round", "--resolutions", "16"}).code, 2);
}

TEST(Cli, OutWritesFile) {
  const std::string path = temp_path("report.json");
  std::remove(path.c_str());
  const auto r = run({"degree", "--scenario", "s3_round", "--resolution", "8", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const json j = json::parse(slurp(path));
  EXPECT_EQ(j.at("degree").at("rounded"), 1);

  const std::string csv_path = temp_path("report.csv");
  ASSERT_EQ(run({"degree", "--scenario", "s3_round", "--resolution", "8", "--out", csv_path}).code,
            0);
  EXPECT_EQ(slurp(csv_path).rfind("# transgauss 0.1.0 degree csv v1", 0), 0u);
}

TEST(Cli, ListParsing) {
  EXPECT_EQ(cli::parse_int_list("8,16,32"), (std::vector<int>{8, 16, 32}));
  EXPECT_EQ(cli::parse_double_list("0.1,0.2"), (std::vector<double>{0.1, 0.2}));
  EXPECT_THROW(cli::parse_int_list("8,x"), transgauss::ConfigError);
  EXPECT_THROW(cli::parse_int_list("8.5"), transgauss::ConfigError);
  EXPECT_THROW(cli::parse_double_list(""), transgauss::ConfigError);
}
