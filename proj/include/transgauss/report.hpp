#pragma once

// JSON and CSV renderings of the analysis reports. Output depends only on
// the report contents, so identical runs produce identical bytes.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "transgauss/foliation.hpp"
#include "transgauss/gauss_invariants.hpp"

namespace transgauss {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCsvSchemaVersion = "1";

struct ReportContext {
  std::string scenario;
  std::string ambient;
  int orientation = 1;
  nlohmann::json config = nlohmann::json::object();
};

struct DegreeRun {
  DegreeEstimate estimate;
  std::vector<int> resolution;
  std::optional<PreimageScan> preimage;
  Vector regular_value;
};

// Shortest round-trip decimal form.
std::string format_double(double x);

nlohmann::json to_json(const DegreeEstimate& d);
nlohmann::json verification_json(const VerificationReport& r, const ReportContext& ctx);
nlohmann::json degree_json(const DegreeRun& run, const ReportContext& ctx);
nlohmann::json obstruction_json(const ObstructionReport& r, const ReportContext& ctx,
                                const std::vector<int>& resolution);
nlohmann::json convergence_json(const std::vector<VerificationReport>& rows,
                                const ReportContext& ctx, bool decay_ok);

std::string verification_csv(const VerificationReport& r, const ReportContext& ctx);
std::string degree_csv(const DegreeRun& run, const ReportContext& ctx);
std::string obstruction_csv(const ObstructionReport& r, const ReportContext& ctx);
// Columns: resolution, int mu_0..mu_{m-1}, degree_raw, residual_0..residual_{m-1}.
std::string convergence_csv(const std::vector<VerificationReport>& rows,
                            const ReportContext& ctx);

}  // namespace transgauss
