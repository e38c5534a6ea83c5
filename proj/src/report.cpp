#include "transgauss/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace transgauss {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

namespace {

std::string join_resolution(const std::vector<int>& res) {
  std::string out;
  for (std::size_t i = 0; i < res.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(res[i]);
  }
  return out;
}

std::string csv_header(const std::string& kind, const ReportContext& ctx) {
  return "# transgauss " + std::string(kToolVersion) + " " + kind + " csv v" +
         kCsvSchemaVersion + "\n# scenario=" + ctx.scenario + " ambient=" + ctx.ambient +
         " orientation=" + std::to_string(ctx.orientation) + "\n";
}

json base(const ReportContext& ctx) {
  return {{"scenario", ctx.scenario},
          {"ambient", ctx.ambient},
          {"orientation", ctx.orientation},
          {"tool_version", kToolVersion},
          {"config", ctx.config}};
}

}  // namespace

json to_json(const DegreeEstimate& d) {
  return {{"raw", d.raw}, {"rounded", d.rounded}, {"residual", d.residual}};
}

json verification_json(const VerificationReport& r, const ReportContext& ctx) {
  json j = base(ctx);
  j["v_name"] = r.v_name;
  j["resolution"] = r.resolution;
  j["degree"] = to_json(r.degree);
  j["integrals"] = r.integrals;
  j["rhs"] = r.rhs;
  j["residuals"] = r.residuals;
  j["binomials"] = r.binomials;
  j["sphere_volume"] = r.sphere_volume;
  j["surface_volume"] = r.surface_volume;
  j["extractor_discrepancy"] = r.extractor_discrepancy;
  j["sign_flip_suspect"] = r.sign_flip_suspect;
  return j;
}

json degree_json(const DegreeRun& run, const ReportContext& ctx) {
  json j = base(ctx);
  j["resolution"] = run.resolution;
  j["degree"] = to_json(run.estimate);
  if (run.preimage) {
    std::vector<double> y(run.regular_value.data(),
                          run.regular_value.data() + run.regular_value.size());
    json points = json::array();
    for (std::size_t i = 0; i < run.preimage->preimages.size(); ++i) {
      const Vector& u = run.preimage->preimages[i];
      points.push_back({{"u", std::vector<double>(u.data(), u.data() + u.size())},
                        {"sign", run.preimage->signs[i]},
                        {"jacobian", run.preimage->jacobians[i]}});
    }
    j["preimage"] = {{"regular_value", y},
                     {"degree", run.preimage->degree},
                     {"points", points},
                     {"agrees", run.preimage->degree == run.estimate.rounded}};
  }
  return j;
}

json obstruction_json(const ObstructionReport& r, const ReportContext& ctx,
                      const std::vector<int>& resolution) {
  json j = base(ctx);
  j["v_name"] = r.v_name;
  j["resolution"] = resolution;
  j["rank_bound"] = r.rank_bound;
  j["max_rank"] = r.max_rank;
  j["bound_satisfied"] = r.bound_satisfied;
  j["rank_histogram"] = r.rank_histogram;
  j["degree"] = to_json(r.degree);
  j["verdict"] = verdict_text(r.verdict);
  j["mu_top_max_abs"] = r.mu_top_max_abs;
  j["input_kind"] = r.input_kind;
  j["note"] = r.note;
  return j;
}

json convergence_json(const std::vector<VerificationReport>& rows, const ReportContext& ctx,
                      bool decay_ok) {
  json j = base(ctx);
  json list = json::array();
  for (const auto& r : rows) {
    list.push_back({{"resolution", r.resolution},
                    {"integrals", r.integrals},
                    {"rhs", r.rhs},
                    {"residuals", r.residuals},
                    {"degree", to_json(r.degree)}});
  }
  j["v_name"] = rows.empty() ? "" : rows.front().v_name;
  j["rows"] = list;
  j["decay_ok"] = decay_ok;
  return j;
}

std::string verification_csv(const VerificationReport& r, const ReportContext& ctx) {
  std::ostringstream out;
  out << csv_header("verify", ctx);
  out << "v_name,resolution,k,integral,rhs,residual,degree_raw,degree_rounded\n";
  for (std::size_t k = 0; k < r.integrals.size(); ++k) {
    out << r.v_name << ',' << join_resolution(r.resolution) << ',' << k << ','
        << format_double(r.integrals[k]) << ',' << format_double(r.rhs[k]) << ','
        << format_double(r.residuals[k]) << ',' << format_double(r.degree.raw) << ','
        << r.degree.rounded << '\n';
  }
  return out.str();
}

std::string degree_csv(const DegreeRun& run, const ReportContext& ctx) {
  std::ostringstream out;
  out << csv_header("degree", ctx);
  out << "resolution,degree_raw,degree_rounded,residual,preimage_degree\n";
  out << join_resolution(run.resolution) << ',' << format_double(run.estimate.raw) << ','
      << run.estimate.rounded << ',' << format_double(run.estimate.residual) << ','
      << (run.preimage ? std::to_string(run.preimage->degree) : std::string()) << '\n';
  return out.str();
}

std::string obstruction_csv(const ObstructionReport& r, const ReportContext& ctx) {
  std::ostringstream out;
  out << csv_header("foliate", ctx);
  out << "v_name,rank_bound,max_rank,rank_histogram,degree_raw,degree_rounded,verdict,"
         "mu_top_max_abs\n";
  std::string hist;
  for (std::size_t i = 0; i < r.rank_histogram.size(); ++i) {
    if (i) hist += ';';
    hist += std::to_string(i) + ":" + std::to_string(r.rank_histogram[i]);
  }
  out << r.v_name << ',' << r.rank_bound << ',' << r.max_rank << ',' << hist << ','
      << format_double(r.degree.raw) << ',' << r.degree.rounded << ",\""
      << verdict_text(r.verdict) << "\"," << format_double(r.mu_top_max_abs) << '\n';
  return out.str();
}

std::string convergence_csv(const std::vector<VerificationReport>& rows,
                            const ReportContext& ctx) {
  std::ostringstream out;
  out << csv_header("convergence", ctx);
  const std::size_t m = rows.empty() ? 0 : rows.front().integrals.size();
  out << "resolution";
  for (std::size_t k = 0; k < m; ++k) out << ",integral_" << k;
  out << ",degree_raw";
  for (std::size_t k = 0; k < m; ++k) out << ",residual_" << k;
  out << '\n';
  for (const auto& r : rows) {
    out << join_resolution(r.resolution);
    for (const double x : r.integrals) out << ',' << format_double(x);
    out << ',' << format_double(r.degree.raw);
    for (const double x : r.residuals) out << ',' << format_double(x);
    out << '\n';
  }
  return out.str();
}

}  // namespace transgauss
