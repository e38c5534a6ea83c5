#include "transgauss/foliation.hpp"

#include <algorithm>
#include <cmath>

#include "transgauss/parallel.hpp"

namespace transgauss {

int numerical_rank(const Vector& singular_values, const RankTolerance& tol) {
  if (singular_values.size() == 0) return 0;
  const double threshold = std::max(tol.absolute, tol.relative * singular_values(0));
  int rank = 0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    if (singular_values(i) > threshold) ++rank;
  }
  return rank;
}

LeafOperatorSample leaf_operator(const OperatorData& data, const RankTolerance& tol) {
  LeafOperatorSample s;
  s.point = data.point.u;
  s.matrix = -data.a + data.a_tilde;
  s.singular_values = singular_values(s.matrix);
  s.rank = numerical_rank(s.singular_values, tol);
  return s;
}

LeafOperatorSample leaf_operator(const ImmersedHypersurface& surface, const UnitTangentField& v,
                                 const Vector& u, const RankTolerance& tol) {
  return leaf_operator(field_data(surface, u, v), tol);
}

double mu_top_block(const OperatorData& data) {
  const auto n = data.a.rows();
  Matrix block(n + 1, n + 1);
  block.topLeftCorner(n, n) = data.a - data.a_tilde;
  block.topRightCorner(n, 1) = data.v_vec - data.v_tilde;
  block.row(n) = h_rows(data).row(n);
  return -determinant(block);
}

double mu_top_block(const ImmersedHypersurface& surface, const UnitTangentField& v,
                    const Vector& u) {
  return mu_top_block(field_data(surface, u, v));
}

std::string verdict_text(Verdict v) {
  switch (v) {
    case Verdict::Confirmed:
      return "OBSTRUCTION SATISFIED, deg = 0 confirmed";
    case Verdict::Violated:
      return "RANK BOUND VIOLATED (theorem silent)";
    case Verdict::Contradiction:
      return "CONTRADICTION";
  }
  return "CONTRADICTION";
}

ObstructionReport obstruction_check(const ImmersedHypersurface& surface,
                                    const UnitTangentField& v,
                                    const std::vector<int>& resolution,
                                    const ObstructionOptions& options) {
  const int m = surface.dim();
  if (m % 2 == 0) {
    throw ParameterError("foliation check needs odd dim M, got " + std::to_string(m));
  }
  const int n_leaf = (m - 1) / 2;

  struct Sample {
    int rank;
    double mu_top;
    double weighted_det;
  };
  const QuadratureGrid grid(surface.domain(), resolution);
  const auto samples = parallel_map<Sample>(grid.size(), [&](std::size_t i) {
    const OperatorData data = field_data(surface, grid.node(i), v);
    const LeafOperatorSample leaf = leaf_operator(data, options.rank_tol);
    return Sample{leaf.rank, mu_top_block(data),
                  determinant(-h_rows(data)) * grid.weight(i) * data.point.volume_element};
  });

  ObstructionReport r;
  r.v_name = v.name;
  r.rank_bound = options.rank_bound.value_or(2 * (n_leaf - 1));
  r.rank_histogram.assign(static_cast<std::size_t>(std::max(m - 1, 0)) + 1, 0);
  KahanSum total;
  for (const Sample& s : samples) {
    r.max_rank = std::max(r.max_rank, s.rank);
    ++r.rank_histogram[static_cast<std::size_t>(s.rank)];
    r.mu_top_max_abs = std::max(r.mu_top_max_abs, std::abs(s.mu_top));
    total.add(s.weighted_det);
  }
  r.degree =
      make_degree_estimate(total.value() / unit_sphere_volume(m), options.degree_tolerance);
  r.bound_satisfied = r.max_rank <= r.rank_bound;
  if (!r.bound_satisfied) {
    r.verdict = Verdict::Violated;
  } else if (r.degree.rounded == 0) {
    r.verdict = Verdict::Confirmed;
  } else {
    r.verdict = Verdict::Contradiction;
  }
  r.input_kind = options.declares_leaves ? "foliation" : "distribution";
  if (options.declares_leaves) {
    r.note = "leaves declared by the scenario; integrability not re-checked";
  } else {
    r.note = "integrability of v^perp not checked; the leaf operator is computed pointwise";
  }
  if (r.verdict == Verdict::Confirmed) {
    r.note += "; a trivial tangent bundle is expected (reported, not computed)";
  }
  return r;
}

}  // namespace transgauss
