#include "transgauss/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "transgauss/report.hpp"
#include "transgauss/thresholds.hpp"

namespace transgauss::cli {

using nlohmann::json;

namespace {

const char* const kCommands[] = {"verify", "degree", "foliate", "convergence", "list"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

const char* kind_name(AmbientDescriptor::Kind k) {
  switch (k) {
    case AmbientDescriptor::Kind::Euclidean:
      return "euclidean";
    case AmbientDescriptor::Kind::FlatTorus:
      return "flat_torus";
    case AmbientDescriptor::Kind::Berger:
      return "berger";
    case AmbientDescriptor::Kind::Hyperbolic:
      return "hyperbolic";
  }
  return "euclidean";
}

AmbientDescriptor parse_ambient(const json& j) {
  if (!j.is_object()) throw ConfigError("scenario.ambient must be a table");
  AmbientDescriptor d;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "euclidean") {
    d.kind = AmbientDescriptor::Kind::Euclidean;
  } else if (kind == "flat_torus") {
    d.kind = AmbientDescriptor::Kind::FlatTorus;
  } else if (kind == "berger") {
    d.kind = AmbientDescriptor::Kind::Berger;
  } else if (kind == "hyperbolic") {
    d.kind = AmbientDescriptor::Kind::Hyperbolic;
  } else {
    throw ConfigError("unknown ambient kind '" + kind + "'");
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") continue;
    if (key == "dim") {
      d.dim = value.get<int>();
    } else if (key == "lambda") {
      const auto l = value.get<std::vector<double>>();
      if (l.size() != 3) throw ConfigError("ambient.lambda needs three entries");
      d.lambda = {l[0], l[1], l[2]};
    } else if (key == "base_point") {
      d.base_point = value.get<std::vector<double>>();
    } else {
      throw ConfigError("unknown ambient key '" + key + "'");
    }
  }
  if (d.kind == AmbientDescriptor::Kind::Berger) d.dim = 4;
  if (d.dim < 2 || d.dim > kMaxDim) throw ConfigError("ambient.dim must lie in [2, 6]");
  return d;
}

ScenarioSpec parse_scenario_json(const json& j) {
  if (j.is_string()) return parse_scenario_name(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("scenario must be a name or a table");
  ScenarioSpec spec;
  bool complete = false;
  if (j.contains("name")) {
    const std::string name = j.at("name").get<std::string>();
    try {
      spec = parse_scenario_name(name);
      complete = true;
    } catch (const ConfigError&) {
      spec.name = name;
    }
  } else {
    spec.name = "inline";
  }
  bool has_ambient = false, has_immersion = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "name") continue;
    if (key == "ambient") {
      spec.ambient = parse_ambient(value);
      has_ambient = true;
    } else if (key == "immersion") {
      spec.immersion.kind = value.at("kind").get<std::string>();
      spec.immersion.params.clear();
      if (value.contains("params")) {
        for (const auto& [pk, pv] : value.at("params").items()) {
          spec.immersion.params[pk] = pv.get<double>();
        }
      }
      has_immersion = true;
    } else if (key == "orientation") {
      spec.orientation = value.get<int>();
    } else {
      throw ConfigError("unknown scenario key '" + key + "'");
    }
  }
  if (!complete && !(has_ambient && has_immersion)) {
    throw ConfigError("scenario '" + spec.name +
                      "' is not in the catalogue; an inline scenario needs ambient and immersion");
  }
  return spec;
}

std::vector<int> resolution_from_json(const json& j) {
  if (j.is_number_integer()) return {j.get<int>()};
  return j.get<std::vector<int>>();
}

void validate_resolution(const std::vector<int>& res, int dim) {
  if (res.empty()) throw ConfigError("resolution must not be empty");
  if (res.size() != 1 && static_cast<int>(res.size()) != dim) {
    throw ConfigError("resolution needs 1 or " + std::to_string(dim) + " entries");
  }
  for (const int r : res) {
    if (r < kMinResolution) {
      throw ConfigError("resolution " + std::to_string(r) + " is below the minimum of " +
                        std::to_string(kMinResolution));
    }
  }
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

struct Check {
  std::string name;
  double value;
  double limit;
  bool pass;
};

class Summary {
 public:
  explicit Summary(std::ostream& err) : err_(err), start_(std::chrono::steady_clock::now()) {}

  void line(const std::string& text) { err_ << text << '\n'; }
  bool check(const std::string& name, double value, double limit) {
    const bool pass = value <= limit;
    checks_.push_back({name, value, limit, pass});
    err_ << "check " << name << " value=" << sci(value) << " limit=" << sci(limit) << ' '
         << (pass ? "PASS" : "FAIL") << '\n';
    return pass;
  }
  bool all_pass() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
  }
  int finish(int code) {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", wall);
    err_ << "result exit=" << code << " wall=" << buf << "s tool=transgauss " << kToolVersion
         << '\n';
    return code;
  }

 private:
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_;
  std::vector<Check> checks_;
};

struct Rendered {
  std::string json;
  std::string csv;
};

void write_outputs(const std::vector<OutputSpec>& outputs, const Rendered& r,
                   const std::string& default_format, std::ostream& out) {
  std::vector<OutputSpec> targets = outputs;
  if (targets.empty()) targets.push_back({default_format, "-"});
  for (const auto& o : targets) {
    const std::string& text = o.format == "csv" ? r.csv : r.json;
    if (o.path.empty() || o.path == "-") {
      out << text;
      continue;
    }
    std::ofstream file(o.path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot open output file '" + o.path + "'");
    file << text;
    if (!file) throw ConfigError("failed writing '" + o.path + "'");
  }
}

std::vector<double> default_regular(int dim) {
  const Vector y = default_regular_value(dim);
  return {y.data(), y.data() + y.size()};
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse integer list '" + text + "'");
    }
    if (used != part.size()) throw ConfigError("cannot parse integer list '" + text + "'");
    out.push_back(value);
  }
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse number list '" + text + "'");
    }
    if (used != part.size()) throw ConfigError("cannot parse number list '" + text + "'");
    out.push_back(value);
  }
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

json RunConfig::echo() const {
  json params = json::object();
  for (const auto& [k, v] : scenario.immersion.params) params[k] = v;
  json ambient = {{"kind", kind_name(scenario.ambient.kind)},
                  {"dim", scenario.ambient.dim},
                  {"lambda", scenario.ambient.lambda},
                  {"base_point", scenario.ambient.base_point}};
  json outs = json::array();
  for (const auto& o : outputs) outs.push_back({{"format", o.format}, {"path", o.path}});
  json j = {{"command", command},
            {"scenario",
             {{"name", scenario.name},
              {"ambient", ambient},
              {"immersion", {{"kind", scenario.immersion.kind}, {"params", params}}},
              {"orientation", scenario.orientation}}},
            {"v", v_name},
            {"resolution", resolution},
            {"t_samples", t_samples},
            {"diff", {{"step", diff.step}, {"richardson_levels", diff.richardson_levels}}},
            {"oracle", oracle},
            {"regular_value", regular_value},
            {"rank_tol", {{"relative", rank_tol.relative}, {"absolute", rank_tol.absolute}}},
            {"degree_tolerance", degree_tolerance},
            {"outputs", outs}};
  if (!resolutions.empty()) j["resolutions"] = resolutions;
  j["rank_bound"] = rank_bound ? json(*rank_bound) : json(nullptr);
  return j;
}

void apply_config_json(const json& doc, RunConfig& config) {
  if (!doc.is_object()) throw ConfigError("config file must hold a table");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "command") {
        config.command = value.get<std::string>();
      } else if (key == "scenario") {
        config.scenario = parse_scenario_json(value);
        config.has_scenario = true;
      } else if (key == "v") {
        config.v_name = value.get<std::string>();
      } else if (key == "resolution") {
        config.resolution = resolution_from_json(value);
      } else if (key == "resolutions") {
        config.resolutions.clear();
        for (const auto& r : value) config.resolutions.push_back(resolution_from_json(r));
      } else if (key == "t_samples") {
        config.t_samples = value.get<std::vector<double>>();
      } else if (key == "orientation") {
        config.orientation = value.get<int>();
      } else if (key == "diff") {
        for (const auto& [dk, dv] : value.items()) {
          if (dk == "step") {
            config.diff.step = dv.get<double>();
          } else if (dk == "richardson_levels") {
            config.diff.richardson_levels = dv.get<int>();
          } else {
            throw ConfigError("unknown diff key '" + dk + "'");
          }
        }
      } else if (key == "oracle") {
        config.oracle = value.get<std::string>();
      } else if (key == "regular_value") {
        config.regular_value = value.get<std::vector<double>>();
      } else if (key == "rank_bound") {
        config.rank_bound = value.get<int>();
      } else if (key == "rank_tol") {
        if (value.is_number()) {
          config.rank_tol.relative = value.get<double>();
        } else {
          for (const auto& [rk, rv] : value.items()) {
            if (rk == "relative") {
              config.rank_tol.relative = rv.get<double>();
            } else if (rk == "absolute") {
              config.rank_tol.absolute = rv.get<double>();
            } else {
              throw ConfigError("unknown rank_tol key '" + rk + "'");
            }
          }
        }
      } else if (key == "degree_tolerance") {
        config.degree_tolerance = value.get<double>();
      } else if (key == "outputs") {
        config.outputs.clear();
        for (const auto& o : value) {
          OutputSpec spec;
          spec.format = o.value("format", std::string("json"));
          spec.path = o.value("path", std::string("-"));
          config.outputs.push_back(spec);
        }
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

namespace {

struct Prepared {
  Scenario scenario;
  std::vector<int> resolution;
  ReportContext ctx;
};

Prepared prepare(RunConfig& config) {
  if (!config.has_scenario) throw ConfigError("--scenario is required");
  if (config.orientation) config.scenario.orientation = *config.orientation;
  if (config.scenario.orientation != 1 && config.scenario.orientation != -1) {
    throw ConfigError("orientation must be +1 or -1");
  }
  try {
    config.diff.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  for (const auto& o : config.outputs) {
    if (o.format != "json" && o.format != "csv") {
      throw ConfigError("unknown output format '" + o.format + "'");
    }
  }
  if (!(config.degree_tolerance > 0.0 && config.degree_tolerance <= 0.5)) {
    throw ConfigError("degree_tolerance must lie in (0, 0.5]");
  }
  Prepared p{build_scenario(config.scenario, config.diff), {}, {}};
  if (config.resolution.empty()) config.resolution = p.scenario.default_resolution;
  validate_resolution(config.resolution, p.scenario.surface->dim());
  for (const auto& r : config.resolutions) validate_resolution(r, p.scenario.surface->dim());
  p.resolution = config.resolution;
  for (const double t : config.t_samples) {
    if (!(t > 0.0)) throw ConfigError("t samples must be positive");
  }
  if (!config.t_samples.empty() &&
      static_cast<int>(config.t_samples.size()) < p.scenario.surface->dim()) {
    throw ConfigError("need at least " + std::to_string(p.scenario.surface->dim()) +
                      " t samples");
  }
  p.ctx.scenario = p.scenario.name;
  p.ctx.ambient = p.scenario.ambient_name;
  p.ctx.orientation = config.scenario.orientation;
  return p;
}

UnitTangentField resolve_field(RunConfig& config, const Scenario& s) {
  if (config.v_name.empty()) config.v_name = s.default_field;
  if (config.v_name.empty()) {
    throw ConfigError("scenario '" + s.name + "' has no default vector field; pass --v");
  }
  return s.field(config.v_name);
}

VerifyOptions verify_options(const RunConfig& config) {
  VerifyOptions o;
  o.t_samples = config.t_samples;
  o.degree_tolerance = config.degree_tolerance;
  return o;
}

int cmd_verify(RunConfig& config, std::ostream& out, Summary& summary) {
  Prepared p = prepare(config);
  const UnitTangentField v = resolve_field(config, p.scenario);
  p.ctx.config = config.echo();
  summary.line("verify scenario=" + p.ctx.scenario + " v=" + config.v_name +
               " resolution=" + join(p.resolution));
  const VerificationReport r =
      verify_main_theorem(*p.scenario.surface, v, p.resolution, verify_options(config));
  for (std::size_t k = 0; k < r.residuals.size(); ++k) {
    const double scale = std::max(std::abs(r.rhs[k]), r.surface_volume);
    summary.check("integral_mu" + std::to_string(k), r.residuals[k],
                  thresholds::kIdentityRelative * scale);
  }
  summary.check("degree_residual", r.degree.residual, thresholds::kDegreeResidual);
  summary.check("extractor_discrepancy", r.extractor_discrepancy,
                thresholds::kExtractorAbsolute);
  summary.line("degree=" + std::to_string(r.degree.rounded) + " raw=" +
               format_double(r.degree.raw) + (r.sign_flip_suspect ? " sign_flip_suspect" : ""));
  write_outputs(config.outputs,
                {verification_json(r, p.ctx).dump(2) + "\n", verification_csv(r, p.ctx)},
                "json", out);
  return summary.all_pass() ? kPass : kResidualFailure;
}

int cmd_degree(RunConfig& config, std::ostream& out, Summary& summary) {
  Prepared p = prepare(config);
  if (!config.oracle.empty() && config.oracle != "preimage") {
    throw ConfigError("unknown oracle '" + config.oracle + "'; only 'preimage' is available");
  }
  const int big_n = p.scenario.surface->ambient().dim();
  if (!config.oracle.empty()) {
    if (config.regular_value.empty()) config.regular_value = default_regular(big_n);
    if (static_cast<int>(config.regular_value.size()) != big_n) {
      throw ConfigError("regular value needs " + std::to_string(big_n) + " components");
    }
  }
  p.ctx.config = config.echo();
  summary.line("degree scenario=" + p.ctx.scenario + " orientation=" +
               std::to_string(p.ctx.orientation) + " resolution=" + join(p.resolution));
  DegreeRun run;
  run.resolution = p.resolution;
  run.estimate = degree(*p.scenario.surface, p.resolution, config.degree_tolerance);
  summary.check("degree_residual", run.estimate.residual, thresholds::kDegreeResidual);
  if (!config.oracle.empty()) {
    run.regular_value = Eigen::Map<const Eigen::VectorXd>(config.regular_value.data(), big_n);
    run.preimage = scan_preimages(*p.scenario.surface, run.regular_value, p.resolution);
    summary.check("preimage_mismatch",
                  std::abs(static_cast<double>(run.preimage->degree - run.estimate.rounded)),
                  0.0);
  }
  summary.line("degree=" + std::to_string(run.estimate.rounded) + " raw=" +
               format_double(run.estimate.raw));
  write_outputs(config.outputs, {degree_json(run, p.ctx).dump(2) + "\n", degree_csv(run, p.ctx)},
                "json", out);
  return summary.all_pass() ? kPass : kResidualFailure;
}

int cmd_foliate(RunConfig& config, std::ostream& out, Summary& summary) {
  Prepared p = prepare(config);
  const UnitTangentField v = resolve_field(config, p.scenario);
  p.ctx.config = config.echo();
  summary.line("foliate scenario=" + p.ctx.scenario + " v=" + config.v_name +
               " resolution=" + join(p.resolution));
  ObstructionOptions opts;
  opts.rank_tol = config.rank_tol;
  opts.rank_bound = config.rank_bound;
  opts.degree_tolerance = config.degree_tolerance;
  opts.declares_leaves = p.scenario.declares_leaves(config.v_name);
  const ObstructionReport r = obstruction_check(*p.scenario.surface, v, p.resolution, opts);
  summary.line("max_rank=" + std::to_string(r.max_rank) + " rank_bound=" +
               std::to_string(r.rank_bound) + " degree=" + std::to_string(r.degree.rounded));
  summary.line("verdict: " + verdict_text(r.verdict));
  write_outputs(config.outputs,
                {obstruction_json(r, p.ctx, p.resolution).dump(2) + "\n",
                 obstruction_csv(r, p.ctx)},
                "json", out);
  return r.verdict == Verdict::Contradiction ? kContradiction : kPass;
}

int cmd_convergence(RunConfig& config, std::ostream& out, Summary& summary) {
  Prepared p = prepare(config);
  const UnitTangentField v = resolve_field(config, p.scenario);
  if (config.resolutions.empty()) {
    const int top = p.resolution.front();
    for (const int r : {top / 2, (3 * top) / 4, top}) {
      config.resolutions.push_back({std::max(r, kMinResolution)});
    }
  }
  if (config.resolutions.size() < 2) throw ConfigError("convergence needs at least 2 resolutions");
  p.ctx.config = config.echo();
  summary.line("convergence scenario=" + p.ctx.scenario + " v=" + config.v_name);
  const auto rows =
      convergence_sweep(*p.scenario.surface, v, config.resolutions, verify_options(config));
  std::string why;
  const bool ok = convergence_ok(rows, thresholds::kConvergenceFactor,
                                 thresholds::kConvergenceFloor, &why);
  for (const auto& r : rows) {
    double worst = 0.0;
    for (const double e : r.residuals) worst = std::max(worst, e);
    summary.line("resolution=" + join(r.resolution) + " max_residual=" + sci(worst) +
                 " degree_raw=" + format_double(r.degree.raw));
  }
  summary.line(std::string("decay ") + (ok ? "PASS" : "FAIL " + why));
  write_outputs(config.outputs,
                {convergence_json(rows, p.ctx, ok).dump(2) + "\n", convergence_csv(rows, p.ctx)},
                "csv", out);
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perturbed Gauss map curvature integrals and foliation obstructions",
               "transgauss"};
  app.set_version_flag("--version", std::string("transgauss ") + kToolVersion);
  std::string command, scenario, v_name, resolution, resolutions, t_samples, oracle, out_path,
      format, config_file, regular_value;
  std::optional<int> orientation, rank_bound;
  app.add_option("command", command, "verify | degree | foliate | convergence | list")
      ->check(CLI::IsMember({"verify", "degree", "foliate", "convergence", "list"}));
  app.add_option("--scenario", scenario, "catalogue name (see `list`)");
  app.add_option("--v", v_name, "unit tangent field name");
  app.add_option("--resolution", resolution, "N or N,N,N quadrature points per factor");
  app.add_option("--resolutions", resolutions, "convergence sweep, e.g. 16,24,32");
  app.add_option("--t-samples", t_samples, "t values for the polynomial fit, e.g. 0.1,0.2,0.3");
  app.add_option("--orientation", orientation, "+1 outward normal, -1 reversed")
      ->check(CLI::IsMember({1, -1}));
  app.add_option("--oracle", oracle, "independent degree check: preimage");
  app.add_option("--regular-value", regular_value, "target point for the preimage oracle");
  app.add_option("--rank-bound", rank_bound, "override the leaf operator rank bound");
  app.add_option("--out", out_path, "report path ('-' for stdout)");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", config_file, "JSON config file; flags override it");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kConfigError;
  }

  Summary summary(err);
  try {
    RunConfig config;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw ConfigError("cannot read config file '" + config_file + "'");
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
      }
      apply_config_json(doc, config);
    }
    if (!command.empty()) config.command = command;
    if (config.command.empty()) throw ConfigError("no command given");
    if (std::find(std::begin(kCommands), std::end(kCommands), config.command) ==
        std::end(kCommands)) {
      throw ConfigError("unknown command '" + config.command + "'");
    }
    if (config.command == "list") {
      out << catalogue_listing();
      return kPass;
    }
    if (!scenario.empty()) {
      config.scenario = parse_scenario_name(scenario);
      config.has_scenario = true;
    }
    if (!v_name.empty()) config.v_name = v_name;
    if (!resolution.empty()) config.resolution = parse_int_list(resolution);
    if (!resolutions.empty()) {
      config.resolutions.clear();
      for (const int r : parse_int_list(resolutions)) config.resolutions.push_back({r});
    }
    if (!t_samples.empty()) config.t_samples = parse_double_list(t_samples);
    if (orientation) config.orientation = orientation;
    if (!oracle.empty()) config.oracle = oracle;
    if (!regular_value.empty()) config.regular_value = parse_double_list(regular_value);
    if (rank_bound) config.rank_bound = rank_bound;
    if (!out_path.empty() || !format.empty()) {
      OutputSpec o;
      o.path = out_path.empty() ? "-" : out_path;
      if (!format.empty()) {
        o.format = format;
      } else {
        const bool csv = o.path.size() >= 4 && o.path.compare(o.path.size() - 4, 4, ".csv") == 0;
        o.format = csv ? "csv" : (config.command == "convergence" ? "csv" : "json");
      }
      config.outputs = {o};
    }

    int code = kPass;
    if (config.command == "verify") {
      code = cmd_verify(config, out, summary);
    } else if (config.command == "degree") {
      code = cmd_degree(config, out, summary);
    } else if (config.command == "foliate") {
      code = cmd_foliate(config, out, summary);
    } else {
      code = cmd_convergence(config, out, summary);
    }
    return summary.finish(code);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return summary.finish(kConfigError);
  } catch (const ParameterError& e) {
    err << "config error: " << e.what() << '\n';
    return summary.finish(kConfigError);
  } catch (const DimensionError& e) {
    err << "config error: " << e.what() << '\n';
    return summary.finish(kConfigError);
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return summary.finish(kConfigError);
  } catch (const InconclusiveDegreeError& e) {
    err << "inconclusive degree: " << e.what() << '\n';
    return summary.finish(kInconclusiveDegree);
  } catch (const NearCriticalError& e) {
    err << "inconclusive degree: " << e.what() << '\n';
    return summary.finish(kInconclusiveDegree);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return summary.finish(kResidualFailure);
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace transgauss::cli
