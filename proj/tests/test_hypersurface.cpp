#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "transgauss/gauss_invariants.hpp"
#include "transgauss/scenarios.hpp"

namespace tg = transgauss;
using tg::Matrix;
using tg::Vector;

namespace {

constexpr double kPi = std::numbers::pi;

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Rotates e_1..e_n of an adapted basis by `r` (det r = 1), keeping v last.
tg::OperatorData rotate_basis(const tg::OperatorData& d, const Matrix& r) {
  const int n = static_cast<int>(r.rows());
  Matrix q = Matrix::Identity(n + 1, n + 1);
  q.topLeftCorner(n, n) = r;
  tg::OperatorData out = d;
  out.basis.chart = d.basis.chart * q;
  out.basis.domain = d.basis.domain * q;
  out.shape = q.transpose() * d.shape * q;
  out.alpha = q.transpose() * d.alpha * q;
  out.a = r.transpose() * d.a * r;
  out.a_tilde = r.transpose() * d.a_tilde * r;
  out.v_vec = r.transpose() * d.v_vec;
  out.v_tilde = r.transpose() * d.v_tilde;
  return out;
}

Matrix rotation(int n, double angle_seed) {
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = std::sin(angle_seed * (i + 1) + j);
      a(j, i) = -a(i, j);
    }
  const Eigen::MatrixXd e = Eigen::MatrixXd(a).exp();
  return Matrix(e);
}

}  // namespace

TEST(Hypersurface, FlatSliceFrameAndNormal) {
  const auto s = tg::make_scenario("flat_t3");
  const Vector u = vec({0.1, 0.7, 0.3});
  Matrix expected = Matrix::Zero(4, 3);
  expected.topLeftCorner(3, 3) = Matrix::Identity(3, 3);
  EXPECT_LT(max_abs(s.surface->tangent_frame(u) - expected), 1e-15);
  EXPECT_LT((s.surface->unit_normal(u) - vec({0, 0, 0, 1})).norm(), 1e-15);
  const auto d = tg::shape_data(*s.surface, u);
  EXPECT_LT(max_abs(d.shape), 1e-12);
  EXPECT_LT(max_abs(d.alpha), 1e-12);
}

TEST(Hypersurface, SphereFrameMatchesNumericDerivative) {
  const auto s = tg::make_scenario("s3_round");
  // Same map without the analytic Jacobian.
  const tg::ImmersedHypersurface numeric(
      "numeric", s.surface->ambient_ptr(), s.surface->domain(),
      [&](const Vector& u) { return Vector(s.surface->point(u).coords); }, {}, 1, 0);
  for (const Vector& u : tg::sample_points(*s.surface, 50, 3)) {
    EXPECT_LT(max_abs(s.surface->tangent_frame(u) - numeric.tangent_frame(u)), 1e-9);
    EXPECT_LT((s.surface->unit_normal(u) - s.surface->point(u).coords).norm(), 1e-12);
  }
}

TEST(Hypersurface, SphereShapeOperatorIsMinusIdentity) {
  const auto s = tg::make_scenario("s3_round");
  for (const Vector& u : tg::sample_points(*s.surface, 30, 4)) {
    const auto d = tg::shape_data(*s.surface, u);
    EXPECT_LT(max_abs(d.shape + Matrix::Identity(3, 3)), 1e-8);
    EXPECT_LT(max_abs(d.alpha), 1e-12);
  }
}

TEST(Hypersurface, TubeFrameNormalAndCurvature) {
  const double r = 0.3;
  const auto s = tg::make_scenario("tube_s2_r0.3");
  const Vector u = vec({1.1, 0.4, 0.0});
  const Eigen::Vector3d p(std::sin(1.1) * std::cos(0.4), std::sin(1.1) * std::sin(0.4),
                          std::cos(1.1));
  Vector eta(4);
  eta << p, 0.0;
  EXPECT_LT((s.surface->unit_normal(u) - eta).norm(), 1e-12);

  const Vector w = vec({0.9, 2.0, 1.3});
  const Eigen::Vector3d pw(std::sin(0.9) * std::cos(2.0), std::sin(0.9) * std::sin(2.0),
                           std::cos(0.9));
  Vector slot(4);
  slot << -r * std::sin(1.3) * pw, r * std::cos(1.3);
  EXPECT_LT((s.surface->tangent_frame(w).col(2) - slot).norm(), 1e-14);

  // Eigenvalues: -1/r along theta, -cos(theta)/(1 + r cos(theta)) twice.
  const auto d = tg::shape_data(*s.surface, w);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig{Eigen::Matrix3d(d.shape)};
  const Eigen::Vector3d ev = eig.eigenvalues();
  EXPECT_NEAR(ev(0), -1.0 / r, 1e-7);
  const double side = -std::cos(1.3) / (1.0 + r * std::cos(1.3));
  EXPECT_NEAR(ev(1), side, 1e-7);
  EXPECT_NEAR(ev(2), side, 1e-7);
}

TEST(Hypersurface, NormalTangentFieldAndShapeSymmetry) {
  for (const auto& name : tg::representative_scenarios()) {
    const auto s = tg::make_scenario(name);
    const auto field = s.field(s.default_field);
    const auto& amb = s.surface->ambient();
    double worst_normal = 0.0, worst_unit = 0.0, worst_v = 0.0, worst_sym = 0.0;
    double worst_basis = 0.0;
    for (const Vector& u : tg::sample_points(*s.surface, 40, 5)) {
      const auto sp = s.surface->evaluate(u);
      worst_normal = std::max(worst_normal, std::abs(sp.normal.dot(sp.metric * sp.normal) - 1));
      worst_normal =
          std::max(worst_normal, (sp.tangent.transpose() * sp.metric * sp.normal).cwiseAbs().maxCoeff());
      const Vector v = field.at(sp);
      worst_unit = std::max(worst_unit, std::abs(v.dot(sp.metric * v) - 1.0));
      worst_v = std::max(worst_v, std::abs(v.dot(sp.metric * sp.normal)));
      const auto d = tg::field_data(*s.surface, u, field);
      worst_sym = std::max(worst_sym, max_abs(d.shape - d.shape.transpose()));
      const Matrix gram = d.basis.chart.transpose() * amb.metric_at(sp.p) * d.basis.chart;
      worst_basis = std::max(worst_basis, max_abs(gram - Matrix::Identity(gram.rows(), gram.rows())));
      EXPECT_LT((d.basis.chart.col(d.basis.chart.cols() - 1) - v).norm(), 1e-12);
      EXPECT_LT(max_abs(sp.tangent * d.basis.domain - d.basis.chart), 1e-12);
      // Positive orientation relative to the parameter frame.
      EXPECT_GT(tg::determinant(d.basis.domain), 0.0);
    }
    EXPECT_LT(worst_normal, 1e-10) << name;
    EXPECT_LT(worst_unit, 1e-12) << name;
    EXPECT_LT(worst_v, 1e-10) << name;
    EXPECT_LT(worst_sym, 1e-8) << name;
    EXPECT_LT(worst_basis, 1e-12) << name;
  }
}

TEST(Hypersurface, EuclideanAndFlatInvariantTermsVanish) {
  for (const auto& name : {"s3_round", "tube_s2_r0.3", "tube_circle_r0.5", "flat_t3"}) {
    const auto s = tg::make_scenario(name);
    for (const auto& fname : s.listed_fields) {
      if (fname.find('{') != std::string::npos) continue;
      const auto field = s.field(fname);
      for (const Vector& u : tg::sample_points(*s.surface, 20, 6)) {
        const auto d = tg::field_data(*s.surface, u, field);
        EXPECT_LT(max_abs(d.alpha), 1e-12) << name;
        EXPECT_LT(max_abs(d.a_tilde), 1e-12) << name;
        EXPECT_LT(d.v_tilde.cwiseAbs().maxCoeff(), 1e-12) << name;
      }
    }
  }
}

TEST(Hypersurface, FlatAdaptedBasisIsCoordinateFrame) {
  const auto s = tg::make_scenario("flat_t3");
  const auto field = s.field("coord3");
  const Vector u = vec({0.2, 0.5, 0.9});
  const auto basis = tg::adapted_basis(*s.surface, u, field);
  Matrix expected = Matrix::Zero(4, 3);
  expected.topLeftCorner(3, 3) = Matrix::Identity(3, 3);
  EXPECT_LT(max_abs(basis.chart - expected), 1e-15);
  const auto d = tg::field_data(*s.surface, u, field);
  EXPECT_LT(max_abs(d.a), 1e-12);
  EXPECT_LT(d.v_vec.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Hypersurface, HopfFieldData) {
  const auto s = tg::make_scenario("s3_round");
  for (const char* fname : {"hopf", "hopf_rot"}) {
    const auto field = s.field(fname);
    for (const Vector& u : tg::sample_points(*s.surface, 30, 7)) {
      const auto d = tg::field_data(*s.surface, u, field);
      EXPECT_LT(max_abs(d.a + d.a.transpose()), 1e-8);
      EXPECT_NEAR(std::abs(d.a(0, 1)), 1.0, 1e-8);
      EXPECT_LT(d.v_vec.cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(Hypersurface, BergerAlphaIsHalfBracket) {
  for (const char* name : {"clifford_t3_berger", "clifford_t3_berger_w0.1"}) {
    const auto s = tg::make_scenario(name);
    const auto& amb = dynamic_cast<const tg::BergerGroupAmbient&>(s.surface->ambient());
    const auto br = [](const Vector& a, const Vector& b) {
      Vector out = Vector::Zero(4);
      out.head(3) = 2.0 * Eigen::Vector3d(a.head<3>()).cross(Eigen::Vector3d(b.head<3>()));
      return out;
    };
    for (const Vector& u : tg::sample_points(*s.surface, 30, 8)) {
      const auto d = tg::shape_data(*s.surface, u);
      const auto sp = s.surface->evaluate(u);
      const Matrix f = amb.frame_at(sp.p);
      const Vector eta = f * sp.normal;
      const Matrix& e = d.basis.chart;
      // Oracle 1: the bi-invariant half bracket.
      Matrix half(3, 3);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) half(a, b) = 0.5 * br(f * e.col(b), eta).dot(f * e.col(a));
      EXPECT_LT(max_abs(d.alpha - half), 1e-10) << name;
      EXPECT_LT(max_abs(d.alpha + d.alpha.transpose()), 1e-10) << name;
      // Oracle 2: differentiate q -> F(q)^{-1} F(p) eta numerically.
      Matrix numeric(3, 3);
      const auto gam = amb.numeric_christoffel(sp.p);
      for (int b = 0; b < 3; ++b) {
        const Vector nabla = amb.invariant_derivatives(sp.p, e.col(b), Matrix(eta), gam).col(0);
        for (int a = 0; a < 3; ++a) numeric(a, b) = nabla.dot(sp.metric * e.col(a));
      }
      EXPECT_LT(max_abs(d.alpha - numeric), 1e-8) << name;
    }
  }
}

TEST(Hypersurface, MuIndependentOfBasisRotation) {
  for (const auto& name : tg::representative_scenarios()) {
    const auto s = tg::make_scenario(name);
    const auto field = s.field(s.default_field);
    int i = 0;
    for (const Vector& u : tg::sample_points(*s.surface, 10, 9)) {
      const auto d = tg::field_data(*s.surface, u, field);
      const int n = static_cast<int>(d.a.rows());
      const auto base = tg::mu_by_expansion(d).values;
      const auto turned = tg::mu_by_expansion(rotate_basis(d, rotation(n, 0.7 + i++))).values;
      // An orientation-preserving swap of e_1 and e_2.
      Matrix swap = Matrix::Identity(n, n);
      if (n >= 2) {
        swap(0, 0) = swap(1, 1) = 0.0;
        swap(0, 1) = 1.0;
        swap(1, 0) = -1.0;
      }
      const auto swapped = tg::mu_by_expansion(rotate_basis(d, swap)).values;
      for (std::size_t k = 0; k < base.size(); ++k) {
        EXPECT_NEAR(turned[k], base[k], 1e-10) << name << " k=" << k;
        EXPECT_NEAR(swapped[k], base[k], 1e-12) << name << " k=" << k;
      }
    }
  }
}

TEST(Hypersurface, Integration) {
  const auto s3 = tg::make_scenario("s3_round");
  const double vol = tg::integrate(*s3.surface, [](const tg::SurfacePoint&) { return 1.0; }, {32});
  EXPECT_NEAR(vol, 2 * kPi * kPi, 1e-8 * 2 * kPi * kPi);

  const auto flat = tg::make_scenario("flat_t3");
  EXPECT_NEAR(tg::integrate(*flat.surface, [](const tg::SurfacePoint&) { return 1.0; }, {8}), 1.0,
              1e-14);

  const auto hopf = s3.field("hopf");
  const double mu1 = tg::integrate(
      *s3.surface,
      [&](const tg::SurfacePoint& sp) {
        return tg::mu_by_expansion(tg::field_data(*s3.surface, sp.u, hopf)).values[1];
      },
      {16});
  EXPECT_LT(std::abs(mu1), 1e-10);
}

TEST(Hypersurface, QuadratureConvergesOnSmoothIntegrand) {
  // int_{S^3} x_0^2 = vol(S^3)/4.
  const auto s3 = tg::make_scenario("s3_round");
  const double exact = kPi * kPi / 2;
  double previous = 1.0;
  for (int res : {8, 16, 32}) {
    const double q = tg::integrate(
        *s3.surface, [](const tg::SurfacePoint& sp) { return sp.p.coords(0) * sp.p.coords(0); },
        {res});
    const double err = std::abs(q - exact);
    EXPECT_TRUE(err <= previous / 10 || err < 1e-10) << res << " " << err;
    previous = err;
  }
}

TEST(Hypersurface, SamplePointsAreDeterministicAndInterior) {
  const auto s = tg::make_scenario("s3_round");
  const auto a = tg::sample_points(*s.surface, 200, 42);
  const auto b = tg::sample_points(*s.surface, 200, 42);
  ASSERT_EQ(a.size(), 200u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_GE(a[i](0), 0.05);
    EXPECT_LE(a[i](0), kPi - 0.05);
  }
  EXPECT_NE(tg::sample_points(*s.surface, 1, 43)[0], a[0]);
}

TEST(Hypersurface, OrientationFlipsNormal) {
  const auto s = tg::make_scenario("s3_round");
  const auto flipped = s.surface->with_orientation(-s.surface->orientation());
  const Vector u = vec({0.8, 1.9, 0.4});
  EXPECT_LT((flipped.unit_normal(u) + s.surface->unit_normal(u)).norm(), 1e-15);
  EXPECT_THROW(s.surface->with_orientation(2), tg::ParameterError);
}

TEST(Hypersurface, Errors) {
  const auto amb = tg::make_ambient({});
  const std::vector<tg::DomainFactor> dom(3, tg::DomainFactor::periodic(1.0));
  const tg::ImmersedHypersurface folded(
      "folded", amb, dom, [](const Vector& u) { return vec({u(0), u(1), u(1), 0.0}); }, {}, 1, 0);
  EXPECT_THROW(folded.tangent_frame(vec({0.1, 0.2, 0.3})), tg::ImmersionError);

  EXPECT_THROW(tg::ImmersedHypersurface("short", amb, {tg::DomainFactor::periodic(1.0)},
                                        [](const Vector& u) { return u; }, {}, 1, 0),
               tg::DimensionError);

  const auto s = tg::make_scenario("s3_round");
  const tg::UnitTangentField normal{"normal",
                                    [](const tg::SurfacePoint& sp) { return sp.normal; }};
  EXPECT_THROW(normal.at(*s.surface, vec({0.7, 0.8, 0.9})), tg::DegeneracyError);
}
