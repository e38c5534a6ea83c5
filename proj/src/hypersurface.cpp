#include "transgauss/hypersurface.hpp"

#include <cmath>
#include <random>
#include <string>

#include "transgauss/parallel.hpp"

namespace transgauss {

ImmersedHypersurface::ImmersedHypersurface(std::string name, AmbientPtr ambient,
                                           std::vector<DomainFactor> domain, Map f,
                                           Jacobian df, int orientation, int euler_char)
    : name_(std::move(name)),
      ambient_(std::move(ambient)),
      domain_(std::move(domain)),
      f_(std::move(f)),
      df_(std::move(df)),
      orientation_(orientation),
      euler_char_(euler_char) {
  if (!ambient_) throw ParameterError("hypersurface needs an ambient");
  if (static_cast<int>(domain_.size()) != ambient_->dim() - 1) {
    throw DimensionError("hypersurface domain of dimension " + std::to_string(domain_.size()) +
                         " in ambient of dimension " + std::to_string(ambient_->dim()));
  }
  if (orientation_ != 1 && orientation_ != -1) {
    throw ParameterError("orientation must be +1 or -1");
  }
}

ImmersedHypersurface ImmersedHypersurface::with_orientation(int orientation) const {
  ImmersedHypersurface copy = *this;
  if (orientation != 1 && orientation != -1) {
    throw ParameterError("orientation must be +1 or -1");
  }
  copy.orientation_ = orientation;
  return copy;
}

ChartPoint ImmersedHypersurface::point(const Vector& u) const { return ambient_->make_point(f_(u)); }

Matrix ImmersedHypersurface::raw_frame(const Vector& u) const {
  if (df_) return df_(u);
  const int m = dim();
  Matrix t(ambient_->dim(), m);
  for (int a = 0; a < m; ++a) {
    const Vector dir = Vector::Unit(m, a);
    t.col(a) = directional_derivative(f_, u, dir, stencil(u, a));
  }
  return t;
}

DiffConfig ImmersedHypersurface::stencil(const Vector& u, int axis) const {
  DiffConfig cfg = ambient_->diff();
  const auto& f = domain_[static_cast<std::size_t>(axis)];
  if (f.kind == DomainFactor::Kind::Polar) {
    const double room = std::min(u(axis) - f.lo, f.hi - u(axis));
    if (room > 0.0) cfg.step = std::min(cfg.step, 0.5 * room);
  }
  return cfg;
}

Matrix ImmersedHypersurface::tangent_frame(const Vector& u) const {
  const Matrix t = raw_frame(u);
  const Matrix g = ambient_->metric_at(point(u));
  const Matrix gram = t.transpose() * g * t;
  // Polar coordinates shrink columns near their endpoints without any loss
  // of immersion, so rank is judged on the normalized columns.
  const Vector lengths = gram.diagonal().cwiseMax(0.0).cwiseSqrt();
  const double longest = lengths.size() ? lengths.maxCoeff() : 0.0;
  if (lengths.size() && lengths.minCoeff() < 1e-10 * std::max(1.0, longest)) {
    throw ImmersionError(name_ + ": differential loses rank at a sampled point");
  }
  const Vector inv = lengths.cwiseInverse();
  const Matrix normalized = inv.asDiagonal() * gram * inv.asDiagonal();
  const Vector sv = singular_values(normalized);
  if (sv.size() > 0 && sv(sv.size() - 1) < 1e-10) {
    throw ImmersionError(name_ + ": differential loses rank at a sampled point");
  }
  return t;
}

Vector ImmersedHypersurface::unit_normal(const Vector& u) const {
  const ChartPoint p = point(u);
  const Matrix t = raw_frame(u);
  const int n = ambient_->dim();
  // Cofactor covector: nu_k = det[t | e_k] annihilates every tangent vector.
  Vector nu(n);
  Matrix block(n, n);
  block.leftCols(n - 1) = t;
  for (int k = 0; k < n; ++k) {
    block.col(n - 1) = Vector::Unit(n, k);
    nu(k) = determinant(block);
  }
  const Matrix g = ambient_->metric_at(p);
  Vector eta = g.ldlt().solve(nu);
  eta /= std::sqrt(eta.dot(g * eta));
  return orientation_ * eta;
}

SurfacePoint ImmersedHypersurface::evaluate(const Vector& u) const {
  SurfacePoint sp;
  sp.u = u;
  sp.p = point(u);
  sp.tangent = tangent_frame(u);
  sp.metric = ambient_->metric_at(sp.p);
  sp.induced = sp.tangent.transpose() * sp.metric * sp.tangent;
  sp.normal = unit_normal(u);
  sp.volume_element = std::sqrt(std::max(0.0, determinant(sp.induced)));
  return sp;
}

Vector UnitTangentField::at(const SurfacePoint& sp) const {
  Vector w = rule(sp);
  w -= sp.normal.dot(sp.metric * w) * sp.normal;
  const double norm = std::sqrt(std::max(0.0, w.dot(sp.metric * w)));
  if (norm < 1e-10) {
    throw DegeneracyError("vector field '" + name + "' vanishes at a sampled point");
  }
  return w / norm;
}

Vector UnitTangentField::at(const ImmersedHypersurface& surface, const Vector& u) const {
  return at(surface.evaluate(u));
}

Matrix tangent_frame(const ImmersedHypersurface& surface, const Vector& u) {
  return surface.tangent_frame(u);
}

Vector unit_normal(const ImmersedHypersurface& surface, const Vector& u) {
  return surface.unit_normal(u);
}

namespace {

// Greedy completion of `chosen` (g-orthonormal tangent columns) by projected
// ambient coordinate vectors, largest residual first, ties to the lowest index.
Matrix complete_basis(const SurfacePoint& sp, Matrix chosen, int target) {
  const Matrix& g = sp.metric;
  const int n = static_cast<int>(g.rows());
  while (chosen.cols() < target) {
    double best_norm = -1.0;
    Vector best;
    for (int k = 0; k < n; ++k) {
      Vector w = Vector::Unit(n, k);
      w -= sp.normal.dot(g * w) * sp.normal;
      for (Eigen::Index j = 0; j < chosen.cols(); ++j) {
        w -= chosen.col(j).dot(g * w) * chosen.col(j);
      }
      const double norm = std::sqrt(std::max(0.0, w.dot(g * w)));
      if (norm > best_norm * (1.0 + 1e-12)) {
        best_norm = norm;
        best = w;
      }
    }
    if (best_norm < 1e-10) throw DegeneracyError("adapted_basis: no usable seed vector");
    chosen.conservativeResize(Eigen::NoChange, chosen.cols() + 1);
    chosen.col(chosen.cols() - 1) = best / best_norm;
  }
  return gram_schmidt(chosen, g);
}

Matrix domain_coefficients(const SurfacePoint& sp, const Matrix& chart) {
  return sp.induced.ldlt().solve(sp.tangent.transpose() * sp.metric * chart);
}

TangentBasis oriented(const SurfacePoint& sp, Matrix chart) {
  TangentBasis b{std::move(chart), Matrix()};
  b.domain = domain_coefficients(sp, b.chart);
  if (b.chart.cols() > 1 && determinant(b.domain) < 0.0) {
    b.chart.col(0) *= -1.0;
    b.domain.col(0) *= -1.0;
  }
  return b;
}

TangentBasis adapted_basis_at(const SurfacePoint& sp, const Vector& v) {
  const int m = static_cast<int>(sp.tangent.cols());
  Matrix seed(v.size(), 1);
  seed.col(0) = v;
  const Matrix q = complete_basis(sp, seed, m);
  Matrix chart(q.rows(), m);
  chart.leftCols(m - 1) = q.rightCols(m - 1);
  chart.col(m - 1) = q.col(0);
  return oriented(sp, std::move(chart));
}

TangentBasis tangent_basis_at(const SurfacePoint& sp) {
  const int m = static_cast<int>(sp.tangent.cols());
  return oriented(sp, complete_basis(sp, Matrix(sp.metric.rows(), 0), m));
}

// Partial derivatives of u -> field(u) along each parameter axis.
template <class Fn>
std::array<Vector, kMaxDim> parameter_derivatives(const ImmersedHypersurface& surface,
                                                  const Vector& u, const Fn& field) {
  std::array<Vector, kMaxDim> d;
  const int m = surface.dim();
  for (int a = 0; a < m; ++a) {
    const Vector dir = Vector::Unit(m, a);
    d[a] = directional_derivative(field, u, dir, surface.stencil(u, a));
  }
  return d;
}

Vector combine(const std::array<Vector, kMaxDim>& partials, const Vector& coeffs) {
  Vector out = coeffs(0) * partials[0];
  for (Eigen::Index a = 1; a < coeffs.size(); ++a) out += coeffs(a) * partials[a];
  return out;
}

// Matrix <w_B, e_A>_g for vectors w_B stored as columns.
Matrix in_basis(const SurfacePoint& sp, const TangentBasis& basis, const Matrix& columns) {
  return basis.chart.transpose() * sp.metric * columns;
}

}  // namespace

TangentBasis adapted_basis(const ImmersedHypersurface& surface, const Vector& u,
                           const UnitTangentField& v) {
  const SurfacePoint sp = surface.evaluate(u);
  return adapted_basis_at(sp, v.at(sp));
}

TangentBasis tangent_basis(const ImmersedHypersurface& surface, const Vector& u) {
  return tangent_basis_at(surface.evaluate(u));
}

Matrix shape_operator(const ImmersedHypersurface& surface, const Vector& u,
                      const TangentBasis& basis) {
  const SurfacePoint sp = surface.evaluate(u);
  const Christoffel symbols = surface.ambient().christoffel_at(sp.p);
  const auto d_eta = parameter_derivatives(
      surface, u, [&surface](const Vector& w) -> Vector { return surface.unit_normal(w); });
  const int m = surface.dim();
  Matrix minus_a(sp.p.coords.size(), m);
  for (int b = 0; b < m; ++b) {
    const Vector x = basis.chart.col(b);
    minus_a.col(b) = combine(d_eta, basis.domain.col(b)) + symbols.contract(x, sp.normal);
  }
  return -in_basis(sp, basis, minus_a);
}

Matrix invariant_shape_operator(const ImmersedHypersurface& surface, const Vector& u,
                                const TangentBasis& basis) {
  const SurfacePoint sp = surface.evaluate(u);
  const auto& ambient = surface.ambient();
  const Christoffel symbols = ambient.christoffel_at(sp.p);
  Matrix y(sp.normal.size(), 1);
  y.col(0) = sp.normal;
  const int m = surface.dim();
  Matrix cols(sp.normal.size(), m);
  for (int b = 0; b < m; ++b) {
    cols.col(b) = ambient.invariant_field_derivatives(sp.p, y, sp.p, basis.chart.col(b), symbols);
  }
  return in_basis(sp, basis, cols);
}

OperatorData field_data(const ImmersedHypersurface& surface, const Vector& u,
                        const UnitTangentField& v) {
  OperatorData out;
  out.point = surface.evaluate(u);
  const SurfacePoint& sp = out.point;
  out.v = v.at(sp);
  out.basis = adapted_basis_at(sp, out.v);

  const auto& ambient = surface.ambient();
  const Christoffel symbols = ambient.christoffel_at(sp.p);
  const auto d_eta = parameter_derivatives(
      surface, u, [&surface](const Vector& w) -> Vector { return surface.unit_normal(w); });
  const auto d_v = parameter_derivatives(
      surface, u, [&](const Vector& w) -> Vector { return v.at(surface.evaluate(w)); });

  const int m = surface.dim();
  const int n = m - 1;
  const auto big_n = sp.normal.size();
  Matrix fields(big_n, 2);
  fields.col(0) = sp.normal;
  fields.col(1) = out.v;

  Matrix nabla_eta(big_n, m), nabla_v(big_n, m), inv_eta(big_n, m), inv_v(big_n, m);
  for (int b = 0; b < m; ++b) {
    const Vector x = out.basis.chart.col(b);
    const Vector coeffs = out.basis.domain.col(b);
    nabla_eta.col(b) = combine(d_eta, coeffs) + symbols.contract(x, sp.normal);
    nabla_v.col(b) = combine(d_v, coeffs) + symbols.contract(x, out.v);
    const Matrix inv = ambient.invariant_field_derivatives(sp.p, fields, sp.p, x, symbols);
    inv_eta.col(b) = inv.col(0);
    inv_v.col(b) = inv.col(1);
  }
  out.shape = -in_basis(sp, out.basis, nabla_eta);
  out.alpha = in_basis(sp, out.basis, inv_eta);
  const Matrix dv = in_basis(sp, out.basis, nabla_v);
  const Matrix dv_tilde = in_basis(sp, out.basis, inv_v);
  out.a = dv.topLeftCorner(n, n);
  out.a_tilde = dv_tilde.topLeftCorner(n, n);
  out.v_vec = dv.col(m - 1).head(n);
  out.v_tilde = dv_tilde.col(m - 1).head(n);
  return out;
}

OperatorData shape_data(const ImmersedHypersurface& surface, const Vector& u) {
  OperatorData out;
  out.point = surface.evaluate(u);
  out.basis = tangent_basis_at(out.point);
  out.shape = shape_operator(surface, u, out.basis);
  out.alpha = invariant_shape_operator(surface, u, out.basis);
  return out;
}

Eigen::VectorXd integrate_components(
    const ImmersedHypersurface& surface, int components,
    const std::function<Eigen::VectorXd(const SurfacePoint&)>& fn,
    const std::vector<int>& resolution) {
  const QuadratureGrid grid(surface.domain(), resolution);
  const auto values = parallel_map<Eigen::VectorXd>(grid.size(), [&](std::size_t i) {
    const SurfacePoint sp = surface.evaluate(grid.node(i));
    Eigen::VectorXd value = fn(sp);
    if (value.size() != components) {
      throw DimensionError("integrand returned " + std::to_string(value.size()) +
                           " components, expected " + std::to_string(components));
    }
    return Eigen::VectorXd(value * (grid.weight(i) * sp.volume_element));
  });
  std::vector<KahanSum> sums(static_cast<std::size_t>(components));
  for (const auto& v : values) {
    for (int c = 0; c < components; ++c) sums[static_cast<std::size_t>(c)].add(v(c));
  }
  Eigen::VectorXd out(components);
  for (int c = 0; c < components; ++c) out(c) = sums[static_cast<std::size_t>(c)].value();
  return out;
}

double integrate(const ImmersedHypersurface& surface,
                 const std::function<double(const SurfacePoint&)>& integrand,
                 const std::vector<int>& resolution) {
  return integrate_components(
      surface, 1,
      [&](const SurfacePoint& sp) { return Eigen::VectorXd::Constant(1, integrand(sp)); },
      resolution)(0);
}

std::vector<Vector> sample_points(const ImmersedHypersurface& surface, std::size_t count,
                                  unsigned long long seed, double margin) {
  std::mt19937_64 gen(seed);
  auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Vector u(surface.dim());
    for (int d = 0; d < surface.dim(); ++d) {
      const auto& f = surface.domain()[static_cast<std::size_t>(d)];
      if (f.kind == DomainFactor::Kind::Periodic) {
        u(d) = f.lo + uniform() * f.length();
      } else {
        u(d) = f.lo + margin + uniform() * (f.length() - 2 * margin);
      }
    }
    out.push_back(u);
  }
  return out;
}

}  // namespace transgauss
