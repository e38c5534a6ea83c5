#pragma once

// Command-line front end. Exit codes: 0 pass, 1 residual failure, 2 config
// error, 3 inconclusive degree, 4 contradiction with the rank obstruction.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "transgauss/foliation.hpp"
#include "transgauss/scenarios.hpp"

namespace transgauss::cli {

enum ExitCode : int {
  kPass = 0,
  kResidualFailure = 1,
  kConfigError = 2,
  kInconclusiveDegree = 3,
  kContradiction = 4,
};

struct OutputSpec {
  std::string format = "json";  // json | csv
  std::string path;             // "-" or empty writes to stdout
};

struct RunConfig {
  std::string command;
  ScenarioSpec scenario;
  bool has_scenario = false;
  std::string v_name;
  std::vector<int> resolution;  // empty = scenario default
  std::vector<std::vector<int>> resolutions;
  std::vector<double> t_samples;
  std::optional<int> orientation;
  DiffConfig diff;
  std::string oracle;
  std::vector<double> regular_value;
  std::optional<int> rank_bound;
  RankTolerance rank_tol;
  double degree_tolerance = kDefaultDegreeTolerance;
  std::vector<OutputSpec> outputs;

  // Fully resolved configuration, enough to reproduce the run.
  nlohmann::json echo() const;
};

// Applies a JSON config document onto `config`. Throws ConfigError.
void apply_config_json(const nlohmann::json& doc, RunConfig& config);

// Parses "a,b,c" lists. Throws ConfigError.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace transgauss::cli
