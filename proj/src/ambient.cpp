#include "transgauss/ambient.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace transgauss {

Christoffel Christoffel::zero(int dim) {
  Christoffel c;
  c.dim = dim;
  for (int k = 0; k < dim; ++k) c.symbols[k] = Matrix::Zero(dim, dim);
  return c;
}

Vector Christoffel::contract(const Vector& x, const Vector& y) const {
  Vector out(dim);
  for (int k = 0; k < dim; ++k) out(k) = x.dot(symbols[k] * y);
  return out;
}

TranslationalAmbient::TranslationalAmbient(std::string name, int dim,
                                           std::vector<double> periods, DiffConfig diff)
    : name_(std::move(name)), dim_(dim), periods_(std::move(periods)), diff_(diff) {
  if (dim < 1 || dim > kMaxDim) {
    throw ParameterError("ambient dimension must lie in [1, " + std::to_string(kMaxDim) +
                         "], got " + std::to_string(dim));
  }
  diff_.validate();
}

ChartPoint TranslationalAmbient::make_point(const Vector& coords) const {
  if (coords.size() != dim_) {
    throw DimensionError("chart point of length " + std::to_string(coords.size()) +
                         " for ambient of dimension " + std::to_string(dim_));
  }
  ChartPoint p{coords};
  for (int i = 0; i < dim_; ++i) {
    const double period = periods_[i];
    if (period > 0.0) {
      double r = std::fmod(p.coords(i), period);
      if (r < 0.0) r += period;
      p.coords(i) = r;
    }
  }
  return p;
}

Christoffel TranslationalAmbient::christoffel_at(const ChartPoint& p) const {
  if (auto analytic = analytic_christoffel(p)) return *std::move(analytic);
  return numeric_christoffel(p);
}

Christoffel TranslationalAmbient::numeric_christoffel(const ChartPoint& p) const {
  const int n = dim_;
  auto metric = [this](const Vector& x) -> Matrix { return metric_at(ChartPoint{x}); };
  std::array<Matrix, kMaxDim> dg;
  for (int l = 0; l < n; ++l) {
    const Vector dir = Vector::Unit(n, l);
    dg[l] = directional_derivative(metric, p.coords, dir, diff_);
  }
  const Matrix ginv = metric_at(p).inverse();
  Christoffel c = Christoffel::zero(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) {
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        }
        c.symbols[k](i, j) = 0.5 * s;
      }
    }
  }
  return c;
}

Vector TranslationalAmbient::covariant_derivative(const ChartPoint& p, const Vector& x,
                                                  const VectorField& y) const {
  auto field = [&y](const Vector& q) -> Vector { return y(ChartPoint{q}); };
  const Vector dy = directional_derivative(field, p.coords, x, diff_);
  return dy + christoffel_at(p).contract(x, y(p));
}

Matrix TranslationalAmbient::invariant_derivatives(const ChartPoint& p, const Vector& x,
                                                   const Matrix& frame_values,
                                                   const Christoffel& symbols) const {
  auto pulled_back = [&](const Vector& q) -> Matrix {
    return frame_at(ChartPoint{q}).partialPivLu().solve(frame_values);
  };
  Matrix out = directional_derivative(pulled_back, p.coords, x, diff_);
  const Matrix at_p = pulled_back(p.coords);
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    out.col(c) += symbols.contract(x, at_p.col(c));
  }
  return out;
}

Vector TranslationalAmbient::invariant_field_derivative(const ChartPoint& anchor,
                                                        const Vector& y, const ChartPoint& p,
                                                        const Vector& x) const {
  if (auto closed = closed_form_invariant_derivative(anchor, y, p, x)) return *closed;
  const Matrix w = frame_at(anchor) * y;
  return invariant_derivatives(p, x, w, christoffel_at(p)).col(0);
}

Matrix TranslationalAmbient::invariant_field_derivatives(const ChartPoint& anchor,
                                                         const Matrix& ys, const ChartPoint& p,
                                                         const Vector& x,
                                                         const Christoffel& symbols) const {
  Matrix out(dim_, ys.cols());
  bool closed = true;
  for (Eigen::Index c = 0; c < ys.cols() && closed; ++c) {
    if (auto v = closed_form_invariant_derivative(anchor, ys.col(c), p, x)) {
      out.col(c) = *v;
    } else {
      closed = false;
    }
  }
  if (closed) return out;
  const Matrix w = frame_at(anchor) * ys;
  return invariant_derivatives(p, x, w, symbols);
}

// ---------------------------------------------------------------------------

EuclideanAmbient::EuclideanAmbient(int dim, DiffConfig diff)
    : TranslationalAmbient("euclidean(" + std::to_string(dim) + ")", dim,
                           std::vector<double>(static_cast<std::size_t>(dim), 0.0), diff) {}

Matrix EuclideanAmbient::metric_at(const ChartPoint&) const {
  return Matrix::Identity(dim(), dim());
}

Matrix EuclideanAmbient::frame_at(const ChartPoint&) const {
  return Matrix::Identity(dim(), dim());
}

std::optional<Christoffel> EuclideanAmbient::analytic_christoffel(const ChartPoint&) const {
  return Christoffel::zero(dim());
}

FlatTorusAmbient::FlatTorusAmbient(int dim, DiffConfig diff)
    : TranslationalAmbient("flat_torus(" + std::to_string(dim) + ")", dim,
                           std::vector<double>(static_cast<std::size_t>(dim), 1.0), diff) {}

Matrix FlatTorusAmbient::metric_at(const ChartPoint&) const {
  return Matrix::Identity(dim(), dim());
}

Matrix FlatTorusAmbient::frame_at(const ChartPoint&) const {
  return Matrix::Identity(dim(), dim());
}

std::optional<Christoffel> FlatTorusAmbient::analytic_christoffel(const ChartPoint&) const {
  return Christoffel::zero(dim());
}

// ---------------------------------------------------------------------------

namespace {

std::string berger_name(double l1, double l2, double l3) {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return std::string(buf);
  };
  return "berger(" + fmt(l1) + "," + fmt(l2) + "," + fmt(l3) + ")";
}

// Hamilton product of (w, x, y, z) quaternions.
Eigen::Vector4d quat_mul(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  return {a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3),
          a(0) * b(1) + a(1) * b(0) + a(2) * b(3) - a(3) * b(2),
          a(0) * b(2) - a(1) * b(3) + a(2) * b(0) + a(3) * b(1),
          a(0) * b(3) + a(1) * b(2) - a(2) * b(1) + a(3) * b(0)};
}

Eigen::Vector4d quat_conj(const Eigen::Vector4d& q) { return {q(0), -q(1), -q(2), -q(3)}; }

}  // namespace

BergerGroupAmbient::BergerGroupAmbient(double l1, double l2, double l3, DiffConfig diff)
    : TranslationalAmbient(berger_name(l1, l2, l3), 4,
                           {0.0, 2 * std::numbers::pi, 2 * std::numbers::pi,
                            2 * std::numbers::pi},
                           diff),
      lambda_{l1, l2, l3} {
  for (double l : lambda_) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw ParameterError("berger_group requires positive metric coefficients");
    }
  }
}

Eigen::Vector4d BergerGroupAmbient::quaternion_at(const ChartPoint& p) const {
  const double a = p.coords(0), p1 = p.coords(1), p2 = p.coords(2);
  Eigen::Vector4d q(std::cos(a) * std::cos(p1), std::cos(a) * std::sin(p1),
                    std::sin(a) * std::cos(p2), std::sin(a) * std::sin(p2));
  return q.normalized();
}

Eigen::Matrix<double, 4, 3> BergerGroupAmbient::quaternion_jacobian(const ChartPoint& p) const {
  const double a = p.coords(0), p1 = p.coords(1), p2 = p.coords(2);
  const double ca = std::cos(a), sa = std::sin(a);
  Eigen::Matrix<double, 4, 3> j;
  j.col(0) << -sa * std::cos(p1), -sa * std::sin(p1), ca * std::cos(p2), ca * std::sin(p2);
  j.col(1) << -ca * std::sin(p1), ca * std::cos(p1), 0.0, 0.0;
  j.col(2) << 0.0, 0.0, -sa * std::sin(p2), sa * std::cos(p2);
  return j;
}

Matrix BergerGroupAmbient::frame_at(const ChartPoint& p) const {
  const Eigen::Vector4d qbar = quat_conj(quaternion_at(p));
  const auto jac = quaternion_jacobian(p);
  Matrix f = Matrix::Zero(4, 4);
  for (int c = 0; c < 3; ++c) {
    // Left translation back to the identity: q^{-1} dq lies in Im(H).
    const Eigen::Vector4d xi = quat_mul(qbar, jac.col(c));
    for (int r = 0; r < 3; ++r) f(r, c) = std::sqrt(lambda_[r]) * xi(r + 1);
  }
  f(3, 3) = 1.0;
  return f;
}

Matrix BergerGroupAmbient::metric_at(const ChartPoint& p) const {
  const Eigen::Vector4d qbar = quat_conj(quaternion_at(p));
  const auto jac = quaternion_jacobian(p);
  Eigen::Matrix3d xi;
  for (int c = 0; c < 3; ++c) xi.col(c) = quat_mul(qbar, jac.col(c)).tail<3>();
  const Eigen::Matrix3d lam = Eigen::Vector3d(lambda_[0], lambda_[1], lambda_[2]).asDiagonal();
  Matrix g = Matrix::Zero(4, 4);
  g.topLeftCorner(3, 3) = xi.transpose() * lam * xi;
  g(3, 3) = 1.0;
  return g;
}

Vector BergerGroupAmbient::bracket(const Vector& x, const Vector& y) const {
  Eigen::Vector3d a, b;
  for (int i = 0; i < 3; ++i) {
    a(i) = x(i) / std::sqrt(lambda_[i]);
    b(i) = y(i) / std::sqrt(lambda_[i]);
  }
  // [u, v] = uv - vu = 2 u x v for imaginary quaternions.
  const Eigen::Vector3d c = 2.0 * a.cross(b);
  Vector out = Vector::Zero(4);
  for (int i = 0; i < 3; ++i) out(i) = std::sqrt(lambda_[i]) * c(i);
  return out;
}

Vector BergerGroupAmbient::koszul(const Vector& x, const Vector& y) const {
  // 2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y> for constant inner products.
  Vector out(4);
  const Vector xy = bracket(x, y);
  for (int c = 0; c < 4; ++c) {
    const Vector z = Vector::Unit(4, c);
    out(c) = 0.5 * (xy.dot(z) - bracket(y, z).dot(x) + bracket(z, x).dot(y));
  }
  return out;
}

std::optional<Vector> BergerGroupAmbient::closed_form_invariant_derivative(
    const ChartPoint& anchor, const Vector& y, const ChartPoint& p, const Vector& x) const {
  if (anchor.coords != p.coords) return std::nullopt;
  const Matrix f = frame_at(p);
  const Vector v = koszul(f * x, f * y);
  return Vector(f.partialPivLu().solve(v));
}

// ---------------------------------------------------------------------------

double minkowski_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const auto n = a.size();
  return a.head(n - 1).dot(b.head(n - 1)) - a(n - 1) * b(n - 1);
}

HyperbolicAmbient::HyperbolicAmbient(int dim, const std::vector<double>& base_point,
                                     DiffConfig diff)
    : TranslationalAmbient("hyperbolic(" + std::to_string(dim) + ")", dim,
                           std::vector<double>(static_cast<std::size_t>(dim), 0.0), diff) {
  base_ = Eigen::VectorXd::Zero(dim + 1);
  if (base_point.empty()) {
    base_(dim) = 1.0;
  } else {
    if (static_cast<int>(base_point.size()) != dim + 1) {
      throw DomainError("hyperbolic base point needs " + std::to_string(dim + 1) +
                        " Minkowski components");
    }
    for (int i = 0; i <= dim; ++i) base_(i) = base_point[static_cast<std::size_t>(i)];
    const double q = minkowski_dot(base_, base_);
    if (std::abs(q + 1.0) > 1e-10 * std::max(1.0, base_.squaredNorm()) || base_(dim) <= 0.0) {
      throw DomainError("hyperbolic base point is not on the upper sheet <b,b>_L = -1");
    }
  }
  const Eigen::VectorXd spatial = base_.head(dim);
  const double time = base_(dim);
  boost_ = Eigen::MatrixXd::Identity(dim + 1, dim + 1);
  boost_.topLeftCorner(dim, dim) += spatial * spatial.transpose() / (1.0 + time);
  boost_.topRightCorner(dim, 1) = spatial;
  boost_.bottomLeftCorner(1, dim) = spatial.transpose();
  boost_(dim, dim) = time;
}

Matrix HyperbolicAmbient::metric_at(const ChartPoint& p) const {
  const Vector& x = p.coords;
  const double s2 = 1.0 + x.squaredNorm();
  return Matrix::Identity(dim(), dim()) - x * x.transpose() / s2;
}

Matrix HyperbolicAmbient::frame_at(const ChartPoint& p) const {
  // Transport along the radial geodesic: W -> W + <o,W>_L/(1 - <P,o>_L) (P + o),
  // expressed on chart vectors.
  const Vector& x = p.coords;
  const double s = std::sqrt(1.0 + x.squaredNorm());
  return Matrix::Identity(dim(), dim()) - x * x.transpose() / (s * (1.0 + s));
}

std::optional<Christoffel> HyperbolicAmbient::analytic_christoffel(const ChartPoint& p) const {
  // Graph over T_b H: Gamma^k_ij = -g_ij x_k.
  const Matrix g = metric_at(p);
  Christoffel c;
  c.dim = dim();
  for (int k = 0; k < dim(); ++k) c.symbols[k] = -p.coords(k) * g;
  return c;
}

Eigen::VectorXd HyperbolicAmbient::embed(const ChartPoint& p) const {
  Eigen::VectorXd local(dim() + 1);
  local.head(dim()) = p.coords;
  local(dim()) = std::sqrt(1.0 + p.coords.squaredNorm());
  return boost_ * local;
}

Eigen::VectorXd HyperbolicAmbient::push_forward(const ChartPoint& p, const Vector& x) const {
  Eigen::VectorXd local(dim() + 1);
  local.head(dim()) = x;
  local(dim()) = p.coords.dot(x) / std::sqrt(1.0 + p.coords.squaredNorm());
  return boost_ * local;
}

// ---------------------------------------------------------------------------

AmbientPtr make_ambient(const AmbientDescriptor& spec, DiffConfig diff) {
  using Kind = AmbientDescriptor::Kind;
  switch (spec.kind) {
    case Kind::Euclidean:
      return std::make_shared<EuclideanAmbient>(spec.dim, diff);
    case Kind::FlatTorus:
      return std::make_shared<FlatTorusAmbient>(spec.dim, diff);
    case Kind::Berger:
      return std::make_shared<BergerGroupAmbient>(spec.lambda[0], spec.lambda[1],
                                                  spec.lambda[2], diff);
    case Kind::Hyperbolic:
      return std::make_shared<HyperbolicAmbient>(spec.dim, spec.base_point, diff);
  }
  throw ParameterError("unknown ambient kind");
}

}  // namespace transgauss
