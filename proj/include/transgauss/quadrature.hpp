#pragma once

// Tensor-product quadrature over parameter domains built from periodic
// intervals (trapezoid rule) and polar intervals (Gauss-Legendre, nodes
// strictly interior).

#include <cstddef>
#include <string>
#include <vector>

#include "transgauss/numeric_kernel.hpp"

namespace transgauss {

struct DomainFactor {
  enum class Kind { Periodic, Polar };
  Kind kind = Kind::Periodic;
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  static DomainFactor periodic(double period) { return {Kind::Periodic, 0.0, period}; }
  static DomainFactor polar(double lo, double hi) { return {Kind::Polar, lo, hi}; }
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule mapped to [lo, hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);
// n equispaced nodes lo + j (hi - lo)/n with equal weights.
QuadratureRule periodic_trapezoid(int n, double lo, double hi);

class QuadratureGrid {
 public:
  // `resolution` holds one count per factor, or a single count broadcast to
  // all factors. Throws ParameterError for counts below 8.
  QuadratureGrid(const std::vector<DomainFactor>& factors, const std::vector<int>& resolution);

  std::size_t size() const { return size_; }
  int dim() const { return static_cast<int>(rules_.size()); }
  Vector node(std::size_t index) const;
  double weight(std::size_t index) const;
  const std::vector<int>& counts() const { return counts_; }
  // Flat indices of the grid neighbours of `index` (periodic factors wrap).
  std::vector<std::size_t> neighbours(std::size_t index) const;

 private:
  std::vector<std::size_t> unflatten(std::size_t index) const;

  std::vector<DomainFactor> factors_;
  std::vector<QuadratureRule> rules_;
  std::vector<int> counts_;
  std::size_t size_ = 1;
};

inline constexpr int kMinResolution = 8;

}  // namespace transgauss
