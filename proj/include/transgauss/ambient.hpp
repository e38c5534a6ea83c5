#pragma once

// Translational Riemannian manifolds: a chart carrying a metric together with
// the translation frame Gamma_p : T_p M -> V, V = R^dim with the standard
// inner product. frame_at(p) is the matrix of Gamma_p in chart components.

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "transgauss/numeric_kernel.hpp"

namespace transgauss {

struct ChartPoint {
  Vector coords;
};

// Levi-Civita symbols Gamma^k_ij, stored as symbols[k](i, j).
struct Christoffel {
  int dim = 0;
  std::array<Matrix, kMaxDim> symbols;

  static Christoffel zero(int dim);
  // Returns Gamma^k_ij x^i y^j.
  Vector contract(const Vector& x, const Vector& y) const;
};

using VectorField = std::function<Vector(const ChartPoint&)>;

class TranslationalAmbient {
 public:
  virtual ~TranslationalAmbient() = default;

  int dim() const { return dim_; }
  // Human-readable descriptor, e.g. "euclidean(4)".
  const std::string& name() const { return name_; }
  // Period of every coordinate; 0 marks a non-periodic coordinate.
  const std::vector<double>& periods() const { return periods_; }
  const DiffConfig& diff() const { return diff_; }

  // Reduces periodic coordinates into [0, period).
  ChartPoint make_point(const Vector& coords) const;

  virtual Matrix metric_at(const ChartPoint& p) const = 0;
  virtual Matrix frame_at(const ChartPoint& p) const = 0;

  // True when Gamma is the identity in chart components (so invariant
  // fields are constant and the connection is flat).
  virtual bool is_flat_translation() const { return false; }
  // True for commutative Lie groups / flat structures where alpha vanishes.
  virtual bool is_commutative() const { return is_flat_translation(); }

  Christoffel christoffel_at(const ChartPoint& p) const;
  Christoffel numeric_christoffel(const ChartPoint& p) const;

  // Nabla_X Y at p for a smooth field Y.
  Vector covariant_derivative(const ChartPoint& p, const Vector& x, const VectorField& y) const;

  // Nabla_X of the invariant extension q -> Gamma_q^{-1} Gamma_anchor (y).
  Vector invariant_field_derivative(const ChartPoint& anchor, const Vector& y,
                                    const ChartPoint& p, const Vector& x) const;
  // Column-wise invariant_field_derivative for the fields in `ys` (chart
  // vectors at anchor), reusing precomputed symbols at p.
  Matrix invariant_field_derivatives(const ChartPoint& anchor, const Matrix& ys,
                                     const ChartPoint& p, const Vector& x,
                                     const Christoffel& symbols) const;

  // Generic route of invariant_field_derivative for several fields at once:
  // column c of the result is Nabla_X of q -> F(q)^{-1} w_c, w_c = column c of
  // `frame_values` (vectors already expressed in V).
  Matrix invariant_derivatives(const ChartPoint& p, const Vector& x, const Matrix& frame_values,
                               const Christoffel& symbols) const;

 protected:
  TranslationalAmbient(std::string name, int dim, std::vector<double> periods, DiffConfig diff);

  virtual std::optional<Christoffel> analytic_christoffel(const ChartPoint&) const {
    return std::nullopt;
  }
  // Closed form for invariant_field_derivative, when the ambient has one.
  virtual std::optional<Vector> closed_form_invariant_derivative(const ChartPoint& /*anchor*/,
                                                                 const Vector& /*y*/,
                                                                 const ChartPoint& /*p*/,
                                                                 const Vector& /*x*/) const {
    return std::nullopt;
  }

 private:
  std::string name_;
  int dim_;
  std::vector<double> periods_;
  DiffConfig diff_;
};

using AmbientPtr = std::shared_ptr<const TranslationalAmbient>;

class EuclideanAmbient final : public TranslationalAmbient {
 public:
  explicit EuclideanAmbient(int dim, DiffConfig diff = {});
  Matrix metric_at(const ChartPoint& p) const override;
  Matrix frame_at(const ChartPoint& p) const override;
  bool is_flat_translation() const override { return true; }

 protected:
  std::optional<Christoffel> analytic_christoffel(const ChartPoint&) const override;
};

// R^dim / Z^dim with unit periods.
class FlatTorusAmbient final : public TranslationalAmbient {
 public:
  explicit FlatTorusAmbient(int dim, DiffConfig diff = {});
  Matrix metric_at(const ChartPoint& p) const override;
  Matrix frame_at(const ChartPoint& p) const override;
  bool is_flat_translation() const override { return true; }

 protected:
  std::optional<Christoffel> analytic_christoffel(const ChartPoint&) const override;
};

// S^3 x S^1 as (unit quaternion, angle) with the left-invariant metric
// diag(l1, l2, l3) + 1 on the algebra basis (i, j, k, d/dtheta).
//
// Chart: (a, phi1, phi2, theta) with q = (cos a e^{i phi1}, sin a e^{i phi2})
// read as q = w + x i + y j + z k, a in (0, pi/2). The chart covers a
// neighbourhood of every Clifford torus a = const.
class BergerGroupAmbient final : public TranslationalAmbient {
 public:
  BergerGroupAmbient(double l1, double l2, double l3, DiffConfig diff = {});

  Matrix metric_at(const ChartPoint& p) const override;
  Matrix frame_at(const ChartPoint& p) const override;
  bool is_commutative() const override { return false; }

  const std::array<double, 3>& lambda() const { return lambda_; }

  // Unit quaternion (w, x, y, z) of the S^3 factor, renormalized.
  Eigen::Vector4d quaternion_at(const ChartPoint& p) const;
  // Lie bracket of two algebra vectors given in orthonormal V components.
  Vector bracket(const Vector& x, const Vector& y) const;
  // Nabla_X Y for left-invariant X, Y (orthonormal V components), via Koszul.
  Vector koszul(const Vector& x, const Vector& y) const;

 protected:
  std::optional<Vector> closed_form_invariant_derivative(const ChartPoint& anchor,
                                                         const Vector& y, const ChartPoint& p,
                                                         const Vector& x) const override;

 private:
  // Columns dq/da, dq/dphi1, dq/dphi2 as quaternions.
  Eigen::Matrix<double, 4, 3> quaternion_jacobian(const ChartPoint& p) const;
  std::array<double, 3> lambda_;
};

// Hyperbolic space as the upper sheet of <x,x>_L = -1 in Minkowski space
// R^{dim,1} (last coordinate timelike). The chart is orthogonal projection
// onto T_b H for the base point b, in the orthonormal basis given by the
// boost carrying (0,...,0,1) to b. Gamma_p is parallel transport to b along
// the unique geodesic.
class HyperbolicAmbient final : public TranslationalAmbient {
 public:
  HyperbolicAmbient(int dim, const std::vector<double>& base_point, DiffConfig diff = {});

  Matrix metric_at(const ChartPoint& p) const override;
  Matrix frame_at(const ChartPoint& p) const override;
  bool is_commutative() const override { return false; }

  const Eigen::VectorXd& base_point() const { return base_; }
  // Point of the model hyperboloid for chart coordinates.
  Eigen::VectorXd embed(const ChartPoint& p) const;
  // Push-forward of a chart vector into Minkowski components.
  Eigen::VectorXd push_forward(const ChartPoint& p, const Vector& x) const;
  // Columns are the orthonormal basis of T_b H identified with V.
  const Eigen::MatrixXd& boost() const { return boost_; }

 protected:
  std::optional<Christoffel> analytic_christoffel(const ChartPoint& p) const override;

 private:
  Eigen::VectorXd base_;
  Eigen::MatrixXd boost_;
};

struct AmbientDescriptor {
  enum class Kind { Euclidean, FlatTorus, Berger, Hyperbolic };
  Kind kind = Kind::Euclidean;
  int dim = 4;
  std::array<double, 3> lambda{1.0, 1.0, 1.0};
  // Minkowski components (dim + 1 entries); empty means (0,...,0,1).
  std::vector<double> base_point;
};

// Throws ParameterError for non-positive lambda or bad dimensions, DomainError
// for a base point off the hyperboloid.
AmbientPtr make_ambient(const AmbientDescriptor& spec, DiffConfig diff = {});

// Minkowski product with signature (+, ..., +, -).
double minkowski_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace transgauss
