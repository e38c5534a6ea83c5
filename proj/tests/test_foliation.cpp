#include <gtest/gtest.h>

#include <cmath>

#include "transgauss/foliation.hpp"
#include "transgauss/scenarios.hpp"

namespace tg = transgauss;
using tg::Matrix;
using tg::Vector;

namespace {

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST(Leaf, NumericalRank) {
  const tg::RankTolerance tol;
  Vector s(3);
  s << 2.0, 1e-3, 1e-8;
  EXPECT_EQ(tg::numerical_rank(s, tol), 2);
  s << 1e-10, 1e-11, 0.0;
  EXPECT_EQ(tg::numerical_rank(s, tol), 0);
  s << 1e-8, 1e-8, 0.0;
  EXPECT_EQ(tg::numerical_rank(s, tol), 2);
  EXPECT_EQ(tg::numerical_rank(Vector(0), tol), 0);
}

TEST(Leaf, FlatLinearFoliationIsZero) {
  const auto s = tg::make_scenario("flat_t3");
  for (const char* fname : {"coord1", "coord2", "coord3"}) {
    const auto v = s.field(fname);
    for (const Vector& u : tg::sample_points(*s.surface, 20, 1)) {
      const auto leaf = tg::leaf_operator(*s.surface, v, u);
      EXPECT_EQ(leaf.matrix.rows(), 2);
      EXPECT_LT(max_abs(leaf.matrix), 1e-12);
      EXPECT_EQ(leaf.rank, 0);
      const auto d = tg::field_data(*s.surface, u, v);
      EXPECT_LT(max_abs(d.a_tilde), 1e-12);
    }
  }
}

TEST(Leaf, HopfHasFullRankAntisymmetricBlock) {
  const auto s = tg::make_scenario("s3_round");
  const auto v = s.field("hopf");
  for (const Vector& u : tg::sample_points(*s.surface, 30, 2)) {
    const auto leaf = tg::leaf_operator(*s.surface, v, u);
    const auto d = tg::field_data(*s.surface, u, v);
    EXPECT_LT(max_abs(leaf.matrix + d.a), 1e-12);
    EXPECT_LT(max_abs(leaf.matrix + leaf.matrix.transpose()), 1e-8);
    EXPECT_EQ(leaf.rank, 2);
    EXPECT_NEAR(leaf.singular_values(0), 1.0, 1e-8);
    EXPECT_NEAR(leaf.singular_values(1), 1.0, 1e-8);
  }
}

TEST(Leaf, EuclideanOperatorIsLeafShapeOperator) {
  // -<d/dX v, e_i> with the extended field differentiated along M directly.
  const tg::DiffConfig cfg{1e-5, 1};
  for (const char* name : {"tube_s2_r0.3", "tube_circle_r0.5"}) {
    const auto s = tg::make_scenario(name);
    for (const auto& fname : {std::string("circle"), std::string("twist1")}) {
      if (fname == "twist1" && std::string(name) != "tube_s2_r0.3") continue;
      const auto v = s.field(fname);
      for (const Vector& u : tg::sample_points(*s.surface, 15, 3)) {
        const auto d = tg::field_data(*s.surface, u, v);
        const auto leaf = tg::leaf_operator(d);
        const auto along = [&](const Vector& w) -> Vector { return v.at(*s.surface, w); };
        const int n = static_cast<int>(d.a.rows());
        Matrix expected(n, n);
        for (int j = 0; j < n; ++j) {
          const Vector dv =
              tg::directional_derivative(along, u, Vector(d.basis.domain.col(j)), cfg);
          for (int i = 0; i < n; ++i) expected(i, j) = -dv.dot(d.basis.chart.col(i));
        }
        EXPECT_LT(max_abs(leaf.matrix - expected), 1e-7) << name << " " << fname;
      }
    }
  }
}

TEST(MuTop, MatchesExpansionEverywhere) {
  for (const auto& name : tg::representative_scenarios()) {
    const auto s = tg::make_scenario(name);
    const auto v = s.field(s.default_field);
    double worst = 0.0;
    for (const Vector& u : tg::sample_points(*s.surface, 100, 4)) {
      const auto d = tg::field_data(*s.surface, u, v);
      worst = std::max(worst, std::abs(tg::mu_top_block(d) - tg::mu_by_expansion(d).values.back()));
    }
    EXPECT_LT(worst, 1e-10) << name;
  }
}

TEST(MuTop, Examples) {
  const auto flat = tg::make_scenario("flat_t3");
  const auto s3 = tg::make_scenario("s3_round");
  for (const Vector& u : tg::sample_points(*s3.surface, 20, 5)) {
    EXPECT_NEAR(tg::mu_top_block(*s3.surface, s3.field("hopf"), u), 1.0, 1e-8);
  }
  for (const Vector& u : tg::sample_points(*flat.surface, 20, 5)) {
    EXPECT_LT(std::abs(tg::mu_top_block(*flat.surface, flat.field("coord3"), u)), 1e-12);
  }
}

TEST(Obstruction, VerdictStrings) {
  EXPECT_EQ(tg::verdict_text(tg::Verdict::Confirmed), "OBSTRUCTION SATISFIED, deg = 0 confirmed");
  EXPECT_EQ(tg::verdict_text(tg::Verdict::Violated), "RANK BOUND VIOLATED (theorem silent)");
  EXPECT_EQ(tg::verdict_text(tg::Verdict::Contradiction), "CONTRADICTION");
}

TEST(Obstruction, FlatConfirmed) {
  const auto s = tg::make_scenario("flat_t3");
  tg::ObstructionOptions opts;
  opts.declares_leaves = s.declares_leaves("coord3");
  const auto r = tg::obstruction_check(*s.surface, s.field("coord3"), {8}, opts);
  EXPECT_EQ(r.max_rank, 0);
  EXPECT_EQ(r.rank_bound, 0);
  EXPECT_TRUE(r.bound_satisfied);
  EXPECT_EQ(r.degree.rounded, 0);
  EXPECT_EQ(r.verdict, tg::Verdict::Confirmed);
  EXPECT_EQ(r.input_kind, "foliation");
  ASSERT_EQ(r.rank_histogram.size(), 3u);
  EXPECT_EQ(r.rank_histogram[0], 512u);
  EXPECT_LT(r.mu_top_max_abs, 1e-12);
}

TEST(Obstruction, TubeViolatesBound) {
  const auto s = tg::make_scenario("tube_s2_r0.3");
  tg::ObstructionOptions opts;
  opts.declares_leaves = s.declares_leaves("circle");
  const auto r = tg::obstruction_check(*s.surface, s.field("circle"), {16}, opts);
  EXPECT_GE(r.max_rank, 1);
  EXPECT_FALSE(r.bound_satisfied);
  EXPECT_EQ(r.degree.rounded, 2);
  EXPECT_EQ(r.verdict, tg::Verdict::Violated);
  std::size_t total = 0;
  for (auto c : r.rank_histogram) total += c;
  EXPECT_EQ(total, 16u * 16u * 16u);
  const auto twisted = tg::obstruction_check(*s.surface, s.field("twist1"), {16});
  EXPECT_EQ(twisted.input_kind, "distribution");
  EXPECT_EQ(twisted.verdict, tg::Verdict::Violated);
}

TEST(Obstruction, HopfSilentAndForcedContradiction) {
  const auto s = tg::make_scenario("s3_round");
  const auto r = tg::obstruction_check(*s.surface, s.field("hopf"), {16});
  EXPECT_EQ(r.max_rank, 2);
  EXPECT_EQ(r.degree.rounded, 1);
  EXPECT_EQ(r.verdict, tg::Verdict::Violated);
  EXPECT_EQ(r.input_kind, "distribution");
  EXPECT_NEAR(r.mu_top_max_abs, 1.0, 1e-8);

  tg::ObstructionOptions forced;
  forced.rank_bound = 2;
  const auto c = tg::obstruction_check(*s.surface, s.field("hopf"), {16}, forced);
  EXPECT_TRUE(c.bound_satisfied);
  EXPECT_EQ(c.verdict, tg::Verdict::Contradiction);
}

TEST(Obstruction, Errors) {
  tg::ScenarioSpec spec;
  spec.name = "s2";
  spec.ambient = {tg::AmbientDescriptor::Kind::Euclidean, 3, {1, 1, 1}, {}};
  spec.immersion = {"sphere", {}};
  const auto s2 = tg::build_scenario(spec);
  const tg::UnitTangentField any{"any", [](const tg::SurfacePoint& sp) { return sp.tangent.col(0); }};
  EXPECT_THROW(tg::obstruction_check(*s2.surface, any, {16}), tg::ParameterError);

  const auto tube = tg::make_scenario("tube_s2_r0.3");
  tg::ObstructionOptions strict;
  strict.degree_tolerance = 1e-16;
  EXPECT_THROW(tg::obstruction_check(*tube.surface, tube.field("circle"), {8}, strict),
               tg::InconclusiveDegreeError);
}

TEST(Obstruction, SentinelAcrossCatalogue) {
  for (const auto& name : tg::representative_scenarios()) {
    const auto s = tg::make_scenario(name);
    for (const auto& fname : s.listed_fields) {
      const std::string concrete = fname == "twist{k}" ? "twist1" : fname;
      tg::ObstructionOptions opts;
      opts.declares_leaves = s.declares_leaves(concrete);
      const auto r = tg::obstruction_check(*s.surface, s.field(concrete), {12}, opts);
      EXPECT_NE(r.verdict, tg::Verdict::Contradiction) << name << " " << concrete;
      EXPECT_FALSE(r.bound_satisfied && r.degree.rounded != 0) << name << " " << concrete;
    }
  }
}
