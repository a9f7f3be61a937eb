#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "nvsinc/summation.hpp"

namespace nvsinc {

/// Nodes and weights of the Order-point Gauss-Legendre rule on [-1, 1],
/// from Newton iteration on P_n started at the Chebyshev-like guesses.
template <std::size_t Order>
struct GaussLegendreRule {
  static_assert(Order >= 1);
  std::array<double, Order> nodes{};
  std::array<double, Order> weights{};

  GaussLegendreRule() {
    constexpr std::size_t half = (Order + 1) / 2;
    const auto n = static_cast<double>(Order);
    for (std::size_t i = 0; i < half; ++i) {
      double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t j = 2; j <= Order; ++j) {
          const auto jd = static_cast<double>(j);
          const double p2 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p0) / jd;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      nodes[i] = -x;
      nodes[Order - 1 - i] = x;
      weights[i] = w;
      weights[Order - 1 - i] = w;
    }
  }

  static const GaussLegendreRule& instance() {
    static const GaussLegendreRule rule;
    return rule;
  }
};

/// Composite Gauss-Legendre over [a, b] with `panels` equal panels.  Panels
/// are summed left to right with compensation.
template <class T, std::size_t Order = 20, class F>
T composite_gauss_legendre(F&& f, double a, double b, std::size_t panels) {
  const auto& rule = GaussLegendreRule<Order>::instance();
  const double h = (b - a) / static_cast<double>(panels);
  CompensatedSum<T> total;
  for (std::size_t p = 0; p < panels; ++p) {
    const double left = a + h * static_cast<double>(p);
    const double mid = left + 0.5 * h;
    T panel{};
    for (std::size_t i = 0; i < Order; ++i) panel += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total.add(panel * (0.5 * h));
  }
  return total.result();
}

}  // namespace nvsinc
