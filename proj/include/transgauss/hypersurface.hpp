#pragma once

// Closed immersed hypersurfaces f : D -> ambient chart, evaluated on the
// parameter domain D. Everything that depends on a point of M is computed
// from the parameter u, never from the image f(u).

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "transgauss/ambient.hpp"
#include "transgauss/quadrature.hpp"

namespace transgauss {

// Geometry of M at one parameter point.
struct SurfacePoint {
  Vector u;
  ChartPoint p;
  Matrix tangent;  // N x m, columns df/du_a
  Matrix metric;   // ambient metric at p
  Matrix induced;  // m x m Gram matrix of the tangent frame
  Vector normal;   // unit normal eta
  double volume_element = 0.0;  // sqrt(det induced)
};

class ImmersedHypersurface {
 public:
  using Map = std::function<Vector(const Vector& u)>;
  using Jacobian = std::function<Matrix(const Vector& u)>;

  // `df` may be empty, in which case the frame is differentiated numerically.
  // `orientation` multiplies the normal that makes (frame, eta) positively
  // oriented in the chart.
  ImmersedHypersurface(std::string name, AmbientPtr ambient, std::vector<DomainFactor> domain,
                       Map f, Jacobian df, int orientation, int euler_char);

  const std::string& name() const { return name_; }
  const TranslationalAmbient& ambient() const { return *ambient_; }
  const AmbientPtr& ambient_ptr() const { return ambient_; }
  const std::vector<DomainFactor>& domain() const { return domain_; }
  int dim() const { return static_cast<int>(domain_.size()); }
  int orientation() const { return orientation_; }
  int euler_char() const { return euler_char_; }

  ChartPoint point(const Vector& u) const;
  // Throws ImmersionError when a frame column collapses or the Gram matrix
  // of the normalized columns has a singular value below 1e-10.
  Matrix tangent_frame(const Vector& u) const;
  Vector unit_normal(const Vector& u) const;
  SurfacePoint evaluate(const Vector& u) const;

  // Difference settings for the parameter axis at u; the step shrinks so the
  // stencil stays inside a polar interval.
  DiffConfig stencil(const Vector& u, int axis) const;

  // Same surface with the normal reversed.
  ImmersedHypersurface with_orientation(int orientation) const;

 private:
  Matrix raw_frame(const Vector& u) const;

  std::string name_;
  AmbientPtr ambient_;
  std::vector<DomainFactor> domain_;
  Map f_;
  Jacobian df_;
  int orientation_;
  int euler_char_;
};

// Unit tangent vector field v on M. The rule may return any chart vector at
// f(u); it is projected onto T_p M and normalized in the ambient metric.
struct UnitTangentField {
  using Rule = std::function<Vector(const SurfacePoint&)>;
  std::string name;
  Rule rule;

  Vector at(const SurfacePoint& sp) const;
  Vector at(const ImmersedHypersurface& surface, const Vector& u) const;
};

// Orthonormal tangent basis in chart components together with its
// coefficients in the parameter frame (chart = tangent * domain).
struct TangentBasis {
  Matrix chart;   // N x m
  Matrix domain;  // m x m
};

// Shape and invariant shape operators plus the row quantities of the
// perturbed Gauss map, all in an adapted basis e_1..e_n, e_{n+1} = v.
struct OperatorData {
  SurfacePoint point;
  TangentBasis basis;
  Vector v;          // chart components of v(p)
  Matrix shape;      // h_AB
  Matrix alpha;      // alpha_AB
  Matrix a;          // a_ij = <nabla_{e_j} v, e_i>
  Matrix a_tilde;    // <nabla_{e_j} ~v(p), e_i>
  Vector v_vec;      // <nabla_v v, e_i>
  Vector v_tilde;    // <nabla_v ~v(p), e_i>
};

// df/du columns; analytic when the surface provides them.
Matrix tangent_frame(const ImmersedHypersurface& surface, const Vector& u);
Vector unit_normal(const ImmersedHypersurface& surface, const Vector& u);

// Orthonormal completion of v(p) with v last; orientation follows the
// parameter frame.
TangentBasis adapted_basis(const ImmersedHypersurface& surface, const Vector& u,
                           const UnitTangentField& v);
// Orthonormal tangent basis without a distinguished field.
TangentBasis tangent_basis(const ImmersedHypersurface& surface, const Vector& u);

// Matrix <A e_B, e_A> of A(X) = -nabla_X eta.
Matrix shape_operator(const ImmersedHypersurface& surface, const Vector& u,
                      const TangentBasis& basis);
// Matrix <alpha e_B, e_A> of alpha(X) = nabla_X ~eta(p).
Matrix invariant_shape_operator(const ImmersedHypersurface& surface, const Vector& u,
                                const TangentBasis& basis);

OperatorData field_data(const ImmersedHypersurface& surface, const Vector& u,
                        const UnitTangentField& v);
// Shape operators only, in tangent_basis(); the v-dependent fields are empty.
OperatorData shape_data(const ImmersedHypersurface& surface, const Vector& u);

// Quadrature of integrand * induced volume element over the domain.
double integrate(const ImmersedHypersurface& surface,
                 const std::function<double(const SurfacePoint&)>& integrand,
                 const std::vector<int>& resolution);

// Vector-valued variant: fn returns `components` values per grid point. Grid
// points are evaluated concurrently and reduced in index order.
Eigen::VectorXd integrate_components(
    const ImmersedHypersurface& surface, int components,
    const std::function<Eigen::VectorXd(const SurfacePoint&)>& fn,
    const std::vector<int>& resolution);

// Deterministic pseudo-random parameter points. Polar factors stay `margin`
// away from their endpoints.
std::vector<Vector> sample_points(const ImmersedHypersurface& surface, std::size_t count,
                                  unsigned long long seed, double margin = 0.05);

}  // namespace transgauss
