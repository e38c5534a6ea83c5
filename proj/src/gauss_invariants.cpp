#include "transgauss/gauss_invariants.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <optional>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "transgauss/parallel.hpp"

namespace transgauss {

DegreeEstimate make_degree_estimate(double raw, double tolerance) {
  if (!std::isfinite(raw)) {
    throw InconclusiveDegreeError("degree integral is not finite", raw);
  }
  DegreeEstimate d;
  d.raw = raw;
  d.rounded = std::lround(raw);
  d.residual = std::abs(raw - static_cast<double>(d.rounded));
  if (d.residual >= tolerance) {
    throw InconclusiveDegreeError("degree integral " + std::to_string(raw) +
                                      " is not close to an integer; increase the resolution",
                                  raw);
  }
  return d;
}

Vector gauss_map(const ImmersedHypersurface& surface, const Vector& u) {
  const ChartPoint p = surface.point(u);
  return surface.ambient().frame_at(p) * surface.unit_normal(u);
}

Vector perturbed_gauss(const ImmersedHypersurface& surface, const UnitTangentField& v, double t,
                       const Vector& u) {
  if (!(t > 0.0)) throw ParameterError("perturbation parameter t must be positive");
  const SurfacePoint sp = surface.evaluate(u);
  return surface.ambient().frame_at(sp.p) * (sp.normal + t * v.at(sp));
}

Matrix h_rows(const OperatorData& data) { return data.shape + data.alpha; }

Matrix v_rows(const OperatorData& data) {
  const auto n = data.a.rows();
  Matrix out(n, n + 1);
  out.leftCols(n) = data.a - data.a_tilde;
  out.col(n) = data.v_vec - data.v_tilde;
  return out;
}

MuCoefficients mu_by_expansion(const OperatorData& data) {
  const Matrix h = h_rows(data);
  const Matrix vr = v_rows(data);
  const int m = static_cast<int>(h.rows());
  const int n = m - 1;
  std::vector<KahanSum> acc(static_cast<std::size_t>(m));
  Matrix rows(m, m);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    for (int i = 0; i < n; ++i) rows.row(i) = (mask >> i) & 1u ? vr.row(i) : h.row(i);
    rows.row(n) = h.row(n);
    acc[static_cast<std::size_t>(std::popcount(mask))].add(determinant(rows));
  }
  MuCoefficients out;
  out.point = data.point.u;
  out.values.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double sign = (n + 1 - k) % 2 == 0 ? 1.0 : -1.0;
    out.values[static_cast<std::size_t>(k)] = sign * acc[static_cast<std::size_t>(k)].value();
  }
  return out;
}

Matrix perturbed_jacobian(const ImmersedHypersurface& surface, const UnitTangentField& v,
                          const OperatorData& data, double t, JacobianSource source) {
  if (!(t > 0.0)) throw ParameterError("perturbation parameter t must be positive");
  const int m = static_cast<int>(data.shape.rows());
  const int n = m - 1;
  const double s = std::sqrt(1.0 + t * t);
  Matrix out(m, m);
  if (source == JacobianSource::InnerProductFormulas) {
    const Matrix h = h_rows(data);
    const Matrix vr = v_rows(data);
    for (int i = 0; i < n; ++i) out.row(i) = -h.row(i) + t * vr.row(i);
    out.row(n) = -s * h.row(n);
    return out;
  }

  const SurfacePoint& sp = data.point;
  const Matrix frame = surface.ambient().frame_at(sp.p);
  const auto phi = [&](const Vector& w) -> Vector { return perturbed_gauss(surface, v, t, w); };
  std::array<Vector, kMaxDim> partials;
  for (int a = 0; a < m; ++a) {
    partials[a] = directional_derivative(phi, sp.u, Vector(Vector::Unit(m, a)),
                                         surface.stencil(sp.u, a));
  }
  const Vector target_u = frame * ((data.v - t * sp.normal) / s);
  for (int j = 0; j < m; ++j) {
    Vector d = Vector::Zero(frame.rows());
    for (int a = 0; a < m; ++a) d += data.basis.domain(a, j) * partials[a];
    for (int i = 0; i < n; ++i) out(i, j) = d.dot(frame * data.basis.chart.col(i));
    out(n, j) = d.dot(target_u);
  }
  return out;
}

std::vector<double> default_t_samples(int m) {
  std::vector<double> t(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) t[static_cast<std::size_t>(i)] = 0.1 * (i + 1);
  return t;
}

MuCoefficients mu_by_fit(const ImmersedHypersurface& surface, const UnitTangentField& v,
                         const Vector& u, std::vector<double> t_samples, JacobianSource source) {
  const int m = surface.dim();
  if (t_samples.empty()) t_samples = default_t_samples(m);
  if (static_cast<int>(t_samples.size()) < m) {
    throw DimensionError("mu_by_fit needs at least " + std::to_string(m) + " t samples");
  }
  const OperatorData data = field_data(surface, u, v);
  std::vector<std::pair<double, double>> samples;
  samples.reserve(t_samples.size());
  for (const double t : t_samples) {
    const Matrix jac = perturbed_jacobian(surface, v, data, t, source);
    samples.emplace_back(t, determinant(jac) / std::sqrt(1.0 + t * t));
  }
  MuCoefficients out;
  out.point = u;
  out.values = fit_polynomial(samples, m - 1);
  return out;
}

DegreeEstimate degree(const ImmersedHypersurface& surface, const std::vector<int>& resolution,
                      double tolerance) {
  const double total = integrate(
      surface,
      [&surface](const SurfacePoint& sp) {
        const OperatorData d = shape_data(surface, sp.u);
        return determinant(-h_rows(d));
      },
      resolution);
  return make_degree_estimate(total / unit_sphere_volume(surface.dim()), tolerance);
}

namespace {

// Parameter displacement with periodic factors wrapped to the shortest
// representative.
Vector wrapped_difference(const ImmersedHypersurface& surface, const Vector& a, const Vector& b) {
  Vector d = a - b;
  for (int i = 0; i < surface.dim(); ++i) {
    const auto& f = surface.domain()[static_cast<std::size_t>(i)];
    if (f.kind == DomainFactor::Kind::Periodic) {
      const double len = f.length();
      d(i) -= len * std::round(d(i) / len);
    }
  }
  return d;
}

Vector reduce_parameter(const ImmersedHypersurface& surface, Vector u) {
  for (int i = 0; i < surface.dim(); ++i) {
    const auto& f = surface.domain()[static_cast<std::size_t>(i)];
    if (f.kind == DomainFactor::Kind::Periodic) {
      const double len = f.length();
      u(i) = f.lo + (u(i) - f.lo) - len * std::floor((u(i) - f.lo) / len);
    }
  }
  return u;
}

bool inside_polar(const ImmersedHypersurface& surface, const Vector& u) {
  for (int i = 0; i < surface.dim(); ++i) {
    const auto& f = surface.domain()[static_cast<std::size_t>(i)];
    if (f.kind == DomainFactor::Kind::Polar && (u(i) <= f.lo || u(i) >= f.hi)) return false;
  }
  return true;
}

Matrix gauss_parameter_jacobian(const ImmersedHypersurface& surface, const Vector& u) {
  const int m = surface.dim();
  const auto gamma = [&surface](const Vector& w) -> Vector { return gauss_map(surface, w); };
  Matrix out(surface.ambient().dim(), m);
  for (int a = 0; a < m; ++a) {
    out.col(a) =
        directional_derivative(gamma, u, Vector(Vector::Unit(m, a)), surface.stencil(u, a));
  }
  return out;
}

// Newton iteration on B^T (gamma(u) - y) = 0, B an orthonormal basis of y^perp.
bool polish_root(const ImmersedHypersurface& surface, const Vector& y, const Matrix& perp,
                 Vector& u) {
  constexpr int kMaxIterations = 60;
  for (int it = 0; it < kMaxIterations; ++it) {
    const Vector g = gauss_map(surface, u);
    if ((g - y).norm() < 1e-13) return true;
    const Matrix jac = perp.transpose() * gauss_parameter_jacobian(surface, u);
    const Vector r = perp.transpose() * (g - y);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(jac),
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-12 * std::max(1.0, sv(0))) return false;
    Vector step = Vector(svd.solve(Eigen::VectorXd(r)));
    const double len = step.norm();
    if (len > 0.3) step *= 0.3 / len;
    u -= step;
    if (step.norm() < 1e-15) break;
  }
  return (gauss_map(surface, u) - y).norm() < 1e-10;
}

}  // namespace

PreimageScan scan_preimages(const ImmersedHypersurface& surface, const Vector& regular_value,
                            const std::vector<int>& resolution) {
  const int big_n = surface.ambient().dim();
  if (regular_value.size() != big_n) {
    throw DimensionError("regular value must have " + std::to_string(big_n) + " components");
  }
  const double norm = regular_value.norm();
  if (norm < 1e-12) throw ParameterError("regular value must be nonzero");
  const Vector y = regular_value / norm;

  Eigen::HouseholderQR<Eigen::MatrixXd> qr{Eigen::MatrixXd(y)};
  const Eigen::MatrixXd q = qr.householderQ();
  const Matrix perp = q.rightCols(big_n - 1);

  const QuadratureGrid grid(surface.domain(), resolution);
  const auto dist = parallel_map<double>(
      grid.size(), [&](std::size_t i) { return (gauss_map(surface, grid.node(i)) - y).norm(); });

  std::vector<std::size_t> seeds;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (dist[i] > 1.0) continue;
    if (dist[i] < 1e-8) {
      seeds.push_back(i);
      continue;
    }
    bool minimum = true;
    bool strictly_below_one = false;
    for (const std::size_t j : grid.neighbours(i)) {
      if (dist[j] < dist[i]) minimum = false;
      if (dist[j] > dist[i]) strictly_below_one = true;
    }
    if (minimum && strictly_below_one) seeds.push_back(i);
  }

  const auto roots = parallel_map<std::optional<Vector>>(seeds.size(), [&](std::size_t s) {
    Vector u = grid.node(seeds[s]);
    if (!polish_root(surface, y, perp, u)) return std::optional<Vector>();
    u = reduce_parameter(surface, u);
    if (!inside_polar(surface, u)) return std::optional<Vector>();
    return std::optional<Vector>(u);
  });

  PreimageScan out;
  for (const auto& root : roots) {
    if (!root) continue;
    const bool duplicate = std::any_of(out.preimages.begin(), out.preimages.end(), [&](const Vector& w) {
      return wrapped_difference(surface, *root, w).norm() < 1e-6;
    });
    if (duplicate) continue;
    const Vector& u = *root;
    const SurfacePoint sp = surface.evaluate(u);
    const Matrix frame = surface.ambient().frame_at(sp.p);
    Matrix image(big_n, big_n), reference(big_n, big_n);
    image.leftCols(big_n - 1) = gauss_parameter_jacobian(surface, u);
    image.col(big_n - 1) = y;
    reference.leftCols(big_n - 1) = frame * sp.tangent;
    reference.col(big_n - 1) = frame * sp.normal;
    const double jac = determinant(image) / determinant(reference);
    if (std::abs(jac) <= 1e-6) {
      throw NearCriticalError("regular value is near-critical: |det D gamma| = " +
                              std::to_string(std::abs(jac)));
    }
    out.preimages.push_back(u);
    out.jacobians.push_back(jac);
    out.signs.push_back(jac > 0 ? 1 : -1);
    out.degree += out.signs.back();
  }
  return out;
}

int degree_by_preimage(const ImmersedHypersurface& surface, const Vector& regular_value,
                       const std::vector<int>& resolution) {
  return scan_preimages(surface, regular_value, resolution).degree;
}

Vector default_regular_value(int dim) {
  static constexpr double kGeneric[kMaxDim] = {0.31, -0.47, 0.56, 0.62, -0.23, 0.41};
  if (dim < 1 || dim > kMaxDim) throw DimensionError("unsupported dimension");
  Vector y(dim);
  for (int i = 0; i < dim; ++i) y(i) = kGeneric[i];
  return y.normalized();
}

double gauss_jacobian_residual(const ImmersedHypersurface& surface, const Vector& u) {
  const OperatorData data = shape_data(surface, u);
  const Matrix frame = surface.ambient().frame_at(data.point.p);
  const Matrix dgamma = gauss_parameter_jacobian(surface, u);
  const Matrix predicted = frame * data.basis.chart * (-h_rows(data));
  const Matrix measured = dgamma * data.basis.domain;
  return (measured - predicted).cwiseAbs().maxCoeff();
}

std::vector<double> mu_integrals(const ImmersedHypersurface& surface, const UnitTangentField& v,
                                 const std::vector<int>& resolution) {
  const int m = surface.dim();
  const Eigen::VectorXd totals = integrate_components(
      surface, m,
      [&](const SurfacePoint& sp) {
        const MuCoefficients mu = mu_by_expansion(field_data(surface, sp.u, v));
        return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(mu.values.data(), m));
      },
      resolution);
  return {totals.data(), totals.data() + m};
}

VerificationReport verify_main_theorem(const ImmersedHypersurface& surface,
                                       const UnitTangentField& v,
                                       const std::vector<int>& resolution,
                                       const VerifyOptions& options) {
  if (surface.euler_char() != 0) {
    throw ParameterError(surface.name() + " has Euler characteristic " +
                         std::to_string(surface.euler_char()) +
                         "; a nowhere-vanishing tangent field requires 0");
  }
  const int m = surface.dim();
  const int n = m - 1;
  // Components: mu_0..mu_{m-1}, det(-(A + alpha)), 1.
  const Eigen::VectorXd totals = integrate_components(
      surface, m + 2,
      [&](const SurfacePoint& sp) {
        const OperatorData data = field_data(surface, sp.u, v);
        const MuCoefficients mu = mu_by_expansion(data);
        Eigen::VectorXd out(m + 2);
        for (int k = 0; k < m; ++k) out(k) = mu.values[static_cast<std::size_t>(k)];
        out(m) = determinant(-h_rows(data));
        out(m + 1) = 1.0;
        return out;
      },
      resolution);

  VerificationReport r;
  r.v_name = v.name;
  r.resolution = resolution;
  r.sphere_volume = unit_sphere_volume(m);
  r.surface_volume = totals(m + 1);
  r.degree = make_degree_estimate(totals(m) / r.sphere_volume, options.degree_tolerance);
  const double deg = static_cast<double>(r.degree.rounded);

  bool any_even = false;
  bool all_flipped = true;
  for (int k = 0; k < m; ++k) {
    const double integral = totals(k);
    const bool even = n % 2 == 0 && k % 2 == 0;
    const double b = even ? binomial(n / 2, k / 2) : 0.0;
    const double rhs = b == 0.0 ? 0.0 : deg * r.sphere_volume * b;
    r.integrals.push_back(integral);
    r.binomials.push_back(b);
    r.rhs.push_back(rhs);
    r.residuals.push_back(std::abs(integral - rhs));
    if (rhs != 0.0) {
      any_even = true;
      if (!(std::abs(integral + rhs) < std::abs(integral - rhs))) all_flipped = false;
    }
  }
  r.sign_flip_suspect = any_even && all_flipped;

  const auto points = sample_points(surface, options.extractor_samples, options.seed);
  const auto gaps = parallel_map<double>(points.size(), [&](std::size_t i) {
    const MuCoefficients a = mu_by_expansion(field_data(surface, points[i], v));
    const MuCoefficients b =
        mu_by_fit(surface, v, points[i], options.t_samples, JacobianSource::InnerProductFormulas);
    double gap = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
      gap = std::max(gap, std::abs(a.values[k] - b.values[k]));
    }
    return gap;
  });
  for (const double g : gaps) r.extractor_discrepancy = std::max(r.extractor_discrepancy, g);
  return r;
}

double v_independence_check(const ImmersedHypersurface& surface, const UnitTangentField& v1,
                            const UnitTangentField& v2, const std::vector<int>& resolution) {
  const auto a = mu_integrals(surface, v1, resolution);
  const auto b = mu_integrals(surface, v2, resolution);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

std::vector<VerificationReport> convergence_sweep(const ImmersedHypersurface& surface,
                                                  const UnitTangentField& v,
                                                  const std::vector<std::vector<int>>& resolutions,
                                                  const VerifyOptions& options) {
  std::vector<VerificationReport> rows;
  rows.reserve(resolutions.size());
  for (const auto& res : resolutions) rows.push_back(verify_main_theorem(surface, v, res, options));
  return rows;
}

namespace {

double mean_resolution(const std::vector<int>& res) {
  double log_sum = 0.0;
  for (const int r : res) log_sum += std::log(static_cast<double>(r));
  return std::exp(log_sum / static_cast<double>(res.size()));
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

bool convergence_ok(const std::vector<VerificationReport>& rows, double factor, double floor,
                    std::string* why) {
  bool ok = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& prev = rows[i - 1];
    const auto& next = rows[i];
    const double doublings =
        std::log2(mean_resolution(next.resolution) / mean_resolution(prev.resolution));
    const double required = std::pow(factor, std::max(doublings, 0.0));
    for (std::size_t k = 0; k < next.residuals.size(); ++k) {
      const double scale = std::max(std::abs(next.rhs[k]), next.surface_volume);
      const double limit = floor * scale;
      const double e0 = prev.residuals[k];
      const double e1 = next.residuals[k];
      const bool step_ok = e0 > limit ? e1 <= std::max(e0 / required, limit) : e1 <= limit;
      if (!step_ok) {
        ok = false;
        if (why) {
          *why += "k=" + std::to_string(k) + " step " + std::to_string(i) + ": " +
                  sci(e0) + " -> " + sci(e1) + "; ";
        }
      }
    }
  }
  return ok;
}

}  // namespace transgauss
