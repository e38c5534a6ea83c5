#pragma once

// Pass/fail thresholds shared by the CLI checks and the acceptance suite.

#include <string_view>
#include <vector>

namespace transgauss::thresholds {

// Generic `verify` gate: |int mu_k - rhs_k| <= identity * max(|rhs_k|, vol M).
inline constexpr double kIdentityRelative = 1e-6;
inline constexpr double kDegreeResidual = 1e-3;
inline constexpr double kExtractorAbsolute = 1e-9;
inline constexpr double kTopBlockAbsolute = 1e-10;
inline constexpr double kGaussJacobianAbsolute = 1e-6;
inline constexpr double kFlatAbsolute = 1e-12;

// Round S^3 with the Hopf field.
inline constexpr double kSphereIdentityRelative = 1e-6;
inline constexpr double kSphereOddAbsolute = 1e-8;
inline constexpr double kSphereDegreeResidual = 1e-6;
inline constexpr double kSphereRuntimeSeconds = 30.0;

// Tube around S^2.
inline constexpr double kTubeIdentityRelative = 1e-5;
inline constexpr double kOddRelativeToVolume = 1e-6;

// Berger Clifford tori.
inline constexpr double kBergerEvenRelative = 1e-6;

inline constexpr double kFieldIndependenceRelative = 1e-6;
inline constexpr double kConvergenceFactor = 10.0;
// Floor relative to max(|rhs|, vol M).
inline constexpr double kConvergenceFloor = 1e-10;
inline constexpr double kHyperbolicAbsolute = 1e-7;

struct Entry {
  std::string_view name;
  double value;
};

inline const std::vector<Entry>& table() {
  static const std::vector<Entry> entries = {
      {"identity_relative", kIdentityRelative},
      {"degree_residual", kDegreeResidual},
      {"extractor_absolute", kExtractorAbsolute},
      {"top_block_absolute", kTopBlockAbsolute},
      {"gauss_jacobian_absolute", kGaussJacobianAbsolute},
      {"flat_absolute", kFlatAbsolute},
      {"sphere_identity_relative", kSphereIdentityRelative},
      {"sphere_odd_absolute", kSphereOddAbsolute},
      {"sphere_degree_residual", kSphereDegreeResidual},
      {"sphere_runtime_seconds", kSphereRuntimeSeconds},
      {"tube_identity_relative", kTubeIdentityRelative},
      {"odd_relative_to_volume", kOddRelativeToVolume},
      {"berger_even_relative", kBergerEvenRelative},
      {"field_independence_relative", kFieldIndependenceRelative},
      {"convergence_factor", kConvergenceFactor},
      {"convergence_floor", kConvergenceFloor},
      {"hyperbolic_absolute", kHyperbolicAbsolute},
  };
  return entries;
}

}  // namespace transgauss::thresholds
