#include "qnl/analysis/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qnl/quadrature.hpp"

namespace qnl {
namespace {

/// Integral of f over [a, b] split at the kernel's scaled breakpoints.
double integrate_over_kernel(const Kernel& kernel, const std::function<double(double)>& f,
                             double a, double b) {
  quadrature::AdaptiveOptions opts;
  opts.rel_tol = 1e-10;
  opts.abs_tol = 1e-15;
  double total = 0.0;
  double lo = a;
  for (double rho : kernel.profile().breakpoints()) {
    const double s = rho * kernel.delta();
    if (s <= lo) continue;
    const double hi = std::min(s, b);
    if (hi > lo) total += quadrature::integrate(f, lo, hi, opts);
    lo = hi;
    if (lo >= b) break;
  }
  return total;
}

}  // namespace

ContinuumBranch continuum_branch(const Kernel& kernel, double x) {
  if (x < 0.0) return ContinuumBranch::Nonlocal;
  if (x <= kernel.delta()) return ContinuumBranch::Transitional;
  return ContinuumBranch::Local;
}

double continuum_qnl_apply(const Kernel& kernel, const SmoothFunction& u, double x) {
  if (!(x > -1.0 && x < 1.0)) throw std::out_of_range("continuum_qnl_apply: x outside (-1, 1)");
  return continuum_qnl_apply(kernel, u, x, continuum_branch(kernel, x));
}

double continuum_qnl_apply(const Kernel& kernel, const SmoothFunction& u, double x,
                           ContinuumBranch branch) {
  if (!(x > -1.0 && x < 1.0)) throw std::out_of_range("continuum_qnl_apply: x outside (-1, 1)");
  const double delta = kernel.delta();
  switch (branch) {
    case ContinuumBranch::Local:
      return u.d2(x);
    case ContinuumBranch::Nonlocal: {
      const double ux = u.value(x);
      return integrate_over_kernel(
          kernel, [&](double s) { return (u.value(x + s) - 2.0 * ux + u.value(x - s)) * kernel(s); },
          0.0, delta);
    }
    case ContinuumBranch::Transitional: {
      if (x < 0.0 || x > delta * (1.0 + 1e-12)) {
        throw std::out_of_range("continuum_qnl_apply: transitional branch needs x in [0, delta]");
      }
      const double xc = std::min(x, delta);
      const double ux = u.value(xc);
      const double jump = integrate_over_kernel(
          kernel, [&](double s) { return kernel(s) * (u.value(xc - s) - ux); }, xc, delta);
      const double tail = tail_moment(kernel, xc, 1);
      const double prefix = prefix_moment(kernel, xc, 2);
      return jump + tail * u.d1(xc) + (prefix + xc * tail) * u.d2(xc);
    }
  }
  return 0.0;
}

TruncationReport truncation_order(const std::vector<int>& n_halves, int ratio_r,
                                  const KernelProfile& profile, const Scheme& scheme,
                                  const SmoothFunction& u, double floor) {
  for (std::size_t k = 1; k < n_halves.size(); ++k) {
    if (n_halves[k] != 2 * n_halves[k - 1]) {
      throw std::invalid_argument("truncation_order: meshes must form a halving sequence");
    }
  }
  TruncationReport report;
  report.floor = floor;
  for (int n : n_halves) {
    const Grid grid(n, ratio_r);
    const Kernel kernel(grid.delta(), profile);
    const StencilMatrix matrix = assemble(grid, kernel, scheme);
    Field field(grid);
    for (int i = grid.first_index(); i <= grid.last_index(); ++i) field[i] = u.value(grid.x(i));
    const std::vector<double> lu = apply(matrix, field);

    TruncationLevel level{n, grid.dx(), {}};
    for (int i = 1; i <= grid.interior_size(); ++i) {
      ContinuumBranch b = ContinuumBranch::Local;
      switch (grid.classify(i)) {
        case Region::Nonlocal: b = ContinuumBranch::Nonlocal; break;
        case Region::Transitional: b = ContinuumBranch::Transitional; break;
        default: break;
      }
      const double exact = continuum_qnl_apply(kernel, u, grid.x(i), b);
      auto& e = level.max_error[static_cast<int>(b)];
      e = std::max(e, std::abs(lu[i - 1] - exact));
    }
    report.levels.push_back(level);
  }
  for (std::size_t k = 0; k + 1 < report.levels.size(); ++k) {
    std::array<std::optional<double>, 3> o;
    for (int b = 0; b < 3; ++b) {
      const double e0 = report.levels[k].max_error[b];
      const double e1 = report.levels[k + 1].max_error[b];
      if (e0 > floor || e1 > floor) o[b] = std::log2(e0 / e1);
    }
    report.orders.push_back(o);
  }
  return report;
}

}  // namespace qnl
