#include "transgauss/numeric_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace transgauss {

void DiffConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ParameterError("difference step must be positive, got " + std::to_string(step));
  }
  if (richardson_levels < 0 || richardson_levels > 3) {
    throw ParameterError("richardson_levels must lie in [0, 3], got " +
                         std::to_string(richardson_levels));
  }
}

double determinant(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("determinant of a " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " matrix");
  }
  const auto n = m.rows();
  switch (n) {
    case 0:
      return 1.0;
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default:
      break;
  }

  Matrix lu = m;
  double det = 1.0;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
    }
    if (lu(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      lu.row(pivot).swap(lu.row(col));
      det = -det;
    }
    det *= lu(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const double factor = lu(r, col) / lu(col, col);
      lu.row(r).tail(n - col - 1) -= factor * lu.row(col).tail(n - col - 1);
    }
  }
  return det;
}

Matrix gram_schmidt(const Matrix& vectors, const Matrix& inner) {
  if (inner.rows() != inner.cols() || inner.rows() != vectors.rows()) {
    throw DimensionError("gram_schmidt: inner product does not match vector length");
  }
  constexpr double kPivotTol = 1e-10;
  Matrix out(vectors.rows(), vectors.cols());
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    Vector w = vectors.col(k);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < k; ++j) {
        const double c = out.col(j).dot(inner * w);
        w -= c * out.col(j);
      }
      if (pass == 0) {
        const double norm = std::sqrt(std::max(0.0, w.dot(inner * w)));
        if (norm < kPivotTol) {
          throw DegeneracyError("gram_schmidt: vector " + std::to_string(k) +
                                " is numerically dependent on its predecessors");
        }
      }
    }
    out.col(k) = w / std::sqrt(w.dot(inner * w));
  }
  return out;
}

std::vector<double> fit_polynomial(std::span<const std::pair<double, double>> samples,
                                   int degree) {
  if (degree < 0) throw DimensionError("fit_polynomial: negative degree");
  const auto cols = static_cast<Eigen::Index>(degree) + 1;
  const auto rows = static_cast<Eigen::Index>(samples.size());
  if (rows < cols) {
    throw DimensionError("fit_polynomial: " + std::to_string(rows) +
                         " samples cannot determine degree " + std::to_string(degree));
  }
  Eigen::MatrixXd vandermonde(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    double power = 1.0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      vandermonde(r, c) = power;
      power *= samples[r].first;
    }
    rhs(r) = samples[r].second;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vandermonde, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  const double condition = smallest > 0.0 ? sv(0) / smallest : INFINITY;
  if (!(condition <= 1e12)) {
    throw IllConditionedError("fit_polynomial: Vandermonde condition estimate " +
                                  std::to_string(condition) + " exceeds 1e12",
                              condition);
  }
  const Eigen::VectorXd coeffs = svd.solve(rhs);
  return {coeffs.data(), coeffs.data() + coeffs.size()};
}

void KahanSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double result = 1.0;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

double unit_sphere_volume(int d) {
  const double half = 0.5 * (d + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

Vector singular_values(const Matrix& m) {
  if (m.size() == 0) return Vector(0);
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

}  // namespace transgauss
