#pragma once

// Small dense linear algebra, finite differences and polynomial fitting.
//
// Every geometric quantity in the library lives in a space of dimension at
// most six, so vectors and matrices use Eigen's fixed-capacity dynamic types:
// storage is inline and no allocation happens on the hot paths.

#include <Eigen/Dense>

#include <span>
#include <utility>
#include <vector>

#include "transgauss/errors.hpp"

namespace transgauss {

inline constexpr int kMaxDim = 6;

using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

struct DiffConfig {
  double step = 3e-3;
  int richardson_levels = 2;

  // Throws ParameterError unless step > 0 and 0 <= richardson_levels <= 3.
  void validate() const;
};

// LU with partial pivoting; closed-form cofactor expansion up to 3x3.
double determinant(const Matrix& m);

// Orthonormalizes the columns of `vectors` with respect to the SPD matrix
// `inner` (modified Gram-Schmidt, one reorthogonalization pass). Column k of
// the result spans the same flag as columns 0..k of the input.
Matrix gram_schmidt(const Matrix& vectors, const Matrix& inner);

// Least-squares coefficients c_0..c_degree of sum_k c_k t^k through the
// samples. Throws IllConditionedError when the Vandermonde condition number
// exceeds 1e12.
std::vector<double> fit_polynomial(std::span<const std::pair<double, double>> samples,
                                   int degree);

// Central difference along `direction` refined by Richardson extrapolation.
// `fn` maps a point to any Eigen expression-capable value (vector or matrix).
template <class Fn, class Point>
auto directional_derivative(const Fn& fn, const Point& point, const Point& direction,
                            const DiffConfig& cfg) {
  using Value = std::decay_t<decltype(fn(point))>;
  constexpr int kMaxLevels = 4;
  Value table[kMaxLevels];
  double h = cfg.step;
  for (int level = 0; level <= cfg.richardson_levels; ++level) {
    const Point forward = point + h * direction;
    const Point backward = point - h * direction;
    table[level] = (fn(forward) - fn(backward)) / (2.0 * h);
    h *= 0.5;
  }
  // Neville-style elimination of the h^2, h^4, ... error terms.
  double factor = 4.0;
  for (int j = 1; j <= cfg.richardson_levels; ++j) {
    for (int level = cfg.richardson_levels; level >= j; --level) {
      table[level] = (factor * table[level] - table[level - 1]) / (factor - 1.0);
    }
    factor *= 4.0;
  }
  return Value(table[cfg.richardson_levels]);
}

// Compensated (Kahan-Babuska) accumulator. Deterministic given input order.
class KahanSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double binomial(int n, int k);

// Volume of the unit d-sphere in R^{d+1}: 2 pi^{(d+1)/2} / Gamma((d+1)/2).
double unit_sphere_volume(int d);

// Singular values in descending order.
Vector singular_values(const Matrix& m);

}  // namespace transgauss
