#pragma once

// Gauss map, perturbed Gauss map p -> Gamma_p(eta + t v), the coefficient
// functions mu_k of det(D phi_t) = sqrt(1 + t^2) sum_k mu_k t^k, and the
// degree of the Gauss map.
//
// Orientation: integrals use the parameter orientation of M; the target
// sphere is oriented by (Gamma_p e_1, ..., Gamma_p e_m, gamma(p)) for a
// positively oriented basis e of T_p M. With that convention the k = 0
// identity holds by construction and reversing eta flips every mu_k whenever
// dim M is odd.

#include <string>
#include <vector>

#include "transgauss/hypersurface.hpp"

namespace transgauss {

struct MuCoefficients {
  std::vector<double> values;  // mu_0 .. mu_{m-1}
  Vector point;
};

struct DegreeEstimate {
  double raw = 0.0;
  long rounded = 0;
  double residual = 0.0;
};

inline constexpr double kDefaultDegreeTolerance = 0.25;

// Rounds `raw`; throws InconclusiveDegreeError when the residual reaches
// `tolerance`.
DegreeEstimate make_degree_estimate(double raw, double tolerance = kDefaultDegreeTolerance);

// gamma(u) = Gamma_p(eta(u)).
Vector gauss_map(const ImmersedHypersurface& surface, const Vector& u);
// phi_t(u) = Gamma_p(eta(u) + t v(u)); throws ParameterError for t <= 0.
Vector perturbed_gauss(const ImmersedHypersurface& surface, const UnitTangentField& v, double t,
                       const Vector& u);

// Row vectors H_A = (h_A. + alpha_A.), A = 1..m, as an m x m matrix.
Matrix h_rows(const OperatorData& data);
// Row vectors V_i = (a_i. - a~_i., v_i - v~_i), i = 1..n, as an n x m matrix.
Matrix v_rows(const OperatorData& data);

// Multilinear expansion of the determinant over subsets of V rows.
MuCoefficients mu_by_expansion(const OperatorData& data);

enum class JacobianSource {
  // Matrix assembled from the inner-product formulas in h, alpha, a, v.
  InnerProductFormulas,
  // Finite-difference derivative of phi_t projected on Gamma_p(e_i), Gamma_p(u).
  FiniteDifference,
};

// Matrix of D phi_t in the bases {e_A} and {Gamma e_1..Gamma e_n, Gamma u},
// u = (v - t eta)/sqrt(1 + t^2).
Matrix perturbed_jacobian(const ImmersedHypersurface& surface, const UnitTangentField& v,
                          const OperatorData& data, double t, JacobianSource source);

// Default t samples {0.1, 0.2, ..., 0.1 m}.
std::vector<double> default_t_samples(int m);

// Polynomial fit of det(D phi_t)/sqrt(1 + t^2) over t_samples. An empty
// sample list selects the default.
MuCoefficients mu_by_fit(const ImmersedHypersurface& surface, const UnitTangentField& v,
                         const Vector& u, std::vector<double> t_samples = {},
                         JacobianSource source = JacobianSource::InnerProductFormulas);

// (1/vol S^m) * int_M det(-(A + alpha)).
DegreeEstimate degree(const ImmersedHypersurface& surface, const std::vector<int>& resolution,
                      double tolerance = kDefaultDegreeTolerance);

struct PreimageScan {
  int degree = 0;
  std::vector<Vector> preimages;
  std::vector<int> signs;
  std::vector<double> jacobians;  // oriented Jacobian determinants
};

// Signed preimage count of `regular_value` under gamma: grid scan for local
// minima of |gamma - y| followed by Newton polishing. Throws
// NearCriticalError when a preimage has |det D gamma| <= 1e-6.
PreimageScan scan_preimages(const ImmersedHypersurface& surface, const Vector& regular_value,
                            const std::vector<int>& resolution);
int degree_by_preimage(const ImmersedHypersurface& surface, const Vector& regular_value,
                       const std::vector<int>& resolution);
// A fixed generic unit vector of V.
Vector default_regular_value(int dim);

// max_B |D gamma(e_B) - Gamma_p(-(A + alpha) e_B)| with D gamma by finite
// differences.
double gauss_jacobian_residual(const ImmersedHypersurface& surface, const Vector& u);

struct VerificationReport {
  std::vector<double> integrals;
  std::vector<double> rhs;
  std::vector<double> residuals;
  std::vector<double> binomials;  // C(n/2, k/2), zero where rhs vanishes identically
  DegreeEstimate degree;
  double sphere_volume = 0.0;
  double surface_volume = 0.0;
  double extractor_discrepancy = 0.0;
  // Every even-k integral matches -rhs better than +rhs.
  bool sign_flip_suspect = false;
  std::vector<int> resolution;
  std::string v_name;
};

struct VerifyOptions {
  std::vector<double> t_samples;  // empty = default
  std::size_t extractor_samples = 16;
  unsigned long long seed = 20240917ULL;
  double degree_tolerance = kDefaultDegreeTolerance;
};

// Curvature integrals of every mu_k against deg(gamma) vol(S^{n+1}) C(n/2, k/2)
// (n, k even) or 0. Requires euler_char == 0.
VerificationReport verify_main_theorem(const ImmersedHypersurface& surface,
                                       const UnitTangentField& v,
                                       const std::vector<int>& resolution,
                                       const VerifyOptions& options = {});

// Integrals of mu_0..mu_{m-1} for one field.
std::vector<double> mu_integrals(const ImmersedHypersurface& surface, const UnitTangentField& v,
                                 const std::vector<int>& resolution);

// max_k |int mu_k(v1) - int mu_k(v2)|.
double v_independence_check(const ImmersedHypersurface& surface, const UnitTangentField& v1,
                            const UnitTangentField& v2, const std::vector<int>& resolution);

// verify_main_theorem at each resolution, in order.
std::vector<VerificationReport> convergence_sweep(const ImmersedHypersurface& surface,
                                                  const UnitTangentField& v,
                                                  const std::vector<std::vector<int>>& resolutions,
                                                  const VerifyOptions& options = {});

// Every residual shrinks by `factor` per resolution doubling (scaled to the
// actual resolution ratio) until it is below floor * max(|rhs_k|, vol M).
// Appends the offending steps to `why` when given.
bool convergence_ok(const std::vector<VerificationReport>& rows, double factor, double floor,
                    std::string* why = nullptr);

}  // namespace transgauss
