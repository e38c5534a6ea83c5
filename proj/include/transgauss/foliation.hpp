#pragma once

// Leaf operator A_v + alpha_v of the codimension-one distribution v^perp and
// the rank obstruction to a nonzero Gauss map degree.

#include <optional>
#include <string>
#include <vector>

#include "transgauss/gauss_invariants.hpp"

namespace transgauss {

struct RankTolerance {
  double relative = 1e-7;  // relative to the largest singular value
  double absolute = 1e-9;  // floor for near-zero operators
};

struct LeafOperatorSample {
  Vector point;
  Matrix matrix;  // (-a_ij) + (a~_ij), i, j = 1..m-1
  int rank = 0;
  Vector singular_values;
};

int numerical_rank(const Vector& singular_values, const RankTolerance& tol);

LeafOperatorSample leaf_operator(const OperatorData& data, const RankTolerance& tol = {});
LeafOperatorSample leaf_operator(const ImmersedHypersurface& surface, const UnitTangentField& v,
                                 const Vector& u, const RankTolerance& tol = {});

// -det of the block matrix [[a - a~, v - v~], [H_m]]. Equals the top
// coefficient mu_{m-1}.
double mu_top_block(const OperatorData& data);
double mu_top_block(const ImmersedHypersurface& surface, const UnitTangentField& v,
                    const Vector& u);

enum class Verdict { Confirmed, Violated, Contradiction };

std::string verdict_text(Verdict v);

struct ObstructionReport {
  int max_rank = 0;
  int rank_bound = 0;
  bool bound_satisfied = false;
  std::vector<std::size_t> rank_histogram;  // index = rank
  DegreeEstimate degree;
  Verdict verdict = Verdict::Violated;
  double mu_top_max_abs = 0.0;
  // "foliation" when the scenario declares leaves, otherwise "distribution".
  std::string input_kind = "distribution";
  std::string note;
  std::string v_name;
};

struct ObstructionOptions {
  RankTolerance rank_tol;
  std::optional<int> rank_bound;  // default 2(n - 1), dim M = 2n + 1
  double degree_tolerance = kDefaultDegreeTolerance;
  bool declares_leaves = false;
};

// Requires odd dim M. Throws ParameterError otherwise.
ObstructionReport obstruction_check(const ImmersedHypersurface& surface,
                                    const UnitTangentField& v,
                                    const std::vector<int>& resolution,
                                    const ObstructionOptions& options = {});

}  // namespace transgauss
