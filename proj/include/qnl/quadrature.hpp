#pragma once

#include <functional>
#include <span>

namespace qnl::quadrature {

/// Gauss-Legendre rule on [-1, 1]. Nodes are ascending.
struct Rule {
  std::span<const double> nodes;
  std::span<const double> weights;
};

/// Rule with `order` points (1 <= order <= 64), computed once by Newton
/// iteration on P_n and cached for the life of the process.
Rule gauss_legendre(int order);

struct AdaptiveOptions {
  int order = 10;
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_depth = 48;
};

/// Adaptive Gauss-Legendre with interval halving. A panel is accepted when
/// the two-half estimate agrees with the whole-panel estimate to
/// max(rel_tol * |estimate|, abs_tol).
double integrate(const std::function<double(double)>& f, double a, double b,
                 const AdaptiveOptions& opts = {});

}  // namespace qnl::quadrature
