#include "transgauss/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>
#include <utility>

#include "transgauss/parallel.hpp"

namespace transgauss {

unsigned worker_count() {
  if (const char* env = std::getenv("TRANSGAUSS_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

QuadratureRule gauss_legendre(int n, double lo, double hi) {
  // Returns (P_n(x), P_n'(x)) by the three-term recurrence.
  auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo_i = static_cast<std::size_t>(i);
    const auto hi_i = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo_i] = mid - half * x;
    rule.nodes[hi_i] = mid + half * x;
    rule.weights[lo_i] = half * w;
    rule.weights[hi_i] = half * w;
  }
  return rule;
}

QuadratureRule periodic_trapezoid(int n, double lo, double hi) {
  QuadratureRule rule;
  const double h = (hi - lo) / n;
  for (int j = 0; j < n; ++j) {
    rule.nodes.push_back(lo + j * h);
    rule.weights.push_back(h);
  }
  return rule;
}

QuadratureGrid::QuadratureGrid(const std::vector<DomainFactor>& factors,
                               const std::vector<int>& resolution)
    : factors_(factors) {
  if (resolution.size() != 1 && resolution.size() != factors.size()) {
    throw ParameterError("resolution needs 1 or " + std::to_string(factors.size()) +
                         " entries, got " + std::to_string(resolution.size()));
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const int n = resolution.size() == 1 ? resolution[0] : resolution[i];
    if (n < kMinResolution) {
      throw ParameterError("resolution " + std::to_string(n) + " below the minimum of " +
                           std::to_string(kMinResolution));
    }
    counts_.push_back(n);
    const auto& f = factors[i];
    rules_.push_back(f.kind == DomainFactor::Kind::Periodic ? periodic_trapezoid(n, f.lo, f.hi)
                                                            : gauss_legendre(n, f.lo, f.hi));
    size_ *= static_cast<std::size_t>(n);
  }
}

std::vector<std::size_t> QuadratureGrid::unflatten(std::size_t index) const {
  std::vector<std::size_t> multi(rules_.size());
  for (std::size_t d = rules_.size(); d-- > 0;) {
    const auto n = static_cast<std::size_t>(counts_[d]);
    multi[d] = index % n;
    index /= n;
  }
  return multi;
}

Vector QuadratureGrid::node(std::size_t index) const {
  const auto multi = unflatten(index);
  Vector u(dim());
  for (std::size_t d = 0; d < multi.size(); ++d) u(static_cast<Eigen::Index>(d)) = rules_[d].nodes[multi[d]];
  return u;
}

double QuadratureGrid::weight(std::size_t index) const {
  const auto multi = unflatten(index);
  double w = 1.0;
  for (std::size_t d = 0; d < multi.size(); ++d) w *= rules_[d].weights[multi[d]];
  return w;
}

std::vector<std::size_t> QuadratureGrid::neighbours(std::size_t index) const {
  const auto multi = unflatten(index);
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < multi.size(); ++d) {
    const auto n = static_cast<std::size_t>(counts_[d]);
    const bool wrap = factors_[d].kind == DomainFactor::Kind::Periodic;
    for (int step : {-1, 1}) {
      auto m = multi;
      if (step < 0) {
        if (m[d] == 0) {
          if (!wrap) continue;
          m[d] = n - 1;
        } else {
          --m[d];
        }
      } else {
        if (m[d] + 1 == n) {
          if (!wrap) continue;
          m[d] = 0;
        } else {
          ++m[d];
        }
      }
      std::size_t flat = 0;
      for (std::size_t e = 0; e < m.size(); ++e) flat = flat * static_cast<std::size_t>(counts_[e]) + m[e];
      out.push_back(flat);
    }
  }
  return out;
}

}  // namespace transgauss
