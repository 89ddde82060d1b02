#include "qnl/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qnl::quadrature {
namespace {

constexpr int kMaxOrder = 64;

struct Table {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Table build(int n) {
  Table t;
  t.nodes.resize(n);
  t.weights.resize(n);
  for (int k = 0; k < (n + 1) / 2; ++k) {
    // Chebyshev-like initial guess for the k-th largest root.
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    t.nodes[n - 1 - k] = x;
    t.nodes[k] = -x;
    t.weights[n - 1 - k] = w;
    t.weights[k] = w;
  }
  if (n % 2 == 1) t.nodes[n / 2] = 0.0;
  return t;
}

double panel(const std::function<double(double)>& f, double a, double b, const Rule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    sum += rule.weights[q] * f(mid + half * rule.nodes[q]);
  }
  return sum * half;
}

double adapt(const std::function<double(double)>& f, double a, double b, double whole,
             const Rule& rule, const AdaptiveOptions& opts, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = panel(f, a, mid, rule);
  const double right = panel(f, mid, b, rule);
  const double refined = left + right;
  const double tol = std::max(opts.rel_tol * std::abs(refined), opts.abs_tol);
  if (std::abs(refined - whole) <= tol || depth >= opts.max_depth) {
    return refined;
  }
  return adapt(f, a, mid, left, rule, opts, depth + 1) +
         adapt(f, mid, b, right, rule, opts, depth + 1);
}

}  // namespace

Rule gauss_legendre(int order) {
  if (order < 1 || order > kMaxOrder) {
    throw std::invalid_argument("gauss_legendre: order must be in [1, 64]");
  }
  static std::array<Table, kMaxOrder + 1> tables;
  static std::array<std::once_flag, kMaxOrder + 1> flags;
  std::call_once(flags[order], [order] { tables[order] = build(order); });
  const Table& t = tables[order];
  return Rule{t.nodes, t.weights};
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const AdaptiveOptions& opts) {
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, opts);
  const Rule rule = gauss_legendre(opts.order);
  return adapt(f, a, b, panel(f, a, b, rule), rule, opts, 0);
}

}  // namespace qnl::quadrature
