#include "qnl/analysis/growth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qnl {
namespace {

using cplx = std::complex<double>;

std::vector<RegionCase> region_cases(const Grid& grid) {
  std::vector<RegionCase> out{RegionCase::nonlocal()};
  for (int m = 1; m <= grid.ratio_r(); ++m) out.push_back(RegionCase::transitional(grid.n_half() + m));
  out.push_back(RegionCase::local());
  return out;
}

int representative_row(const Grid& grid, RegionCase rcase) {
  switch (rcase.kind) {
    case RegionCaseKind::Nonlocal: return grid.n_half();
    case RegionCaseKind::Transitional: return rcase.node;
    case RegionCaseKind::Local: return grid.n_half() + grid.ratio_r() + 1;
  }
  return 0;
}

std::vector<double> theta_grid(const Grid& grid, int points) {
  if (points < 1) throw std::invalid_argument("theta grid needs at least one point");
  std::vector<double> th(static_cast<std::size_t>(points));
  for (int k = 1; k <= points; ++k) th[k - 1] = k * std::numbers::pi / (grid.dx() * points);
  return th;
}

}  // namespace

std::string to_string(RegionCaseKind kind) {
  switch (kind) {
    case RegionCaseKind::Nonlocal: return "nonlocal";
    case RegionCaseKind::Transitional: return "transitional";
    case RegionCaseKind::Local: return "local";
  }
  return "unknown";
}

cplx growth_factor(const Grid& grid, const Kernel& kernel, RegionCase rcase, double theta,
                   double lambda2) {
  const double dx = grid.dx();
  const int r = grid.ratio_r();
  const double lambda1 = lambda2 * dx;
  switch (rcase.kind) {
    case RegionCaseKind::Local:
      return 1.0 + lambda2 * (2.0 * std::cos(theta * dx) - 2.0);
    case RegionCaseKind::Nonlocal: {
      double s = 0.0;
      for (int j = 1; j <= r; ++j) {
        s += 2.0 * (std::cos(theta * j * dx) - 1.0) / (j * j) * partial_moment(kernel, j, dx, 2);
      }
      return 1.0 + lambda2 * s;
    }
    case RegionCaseKind::Transitional: {
      const int m = rcase.node - grid.n_half();
      if (m < 1 || m > r) {
        throw std::invalid_argument("growth_factor: node " + std::to_string(rcase.node) +
                                    " is not transitional");
      }
      const double x = m * dx;
      cplx g = 1.0;
      for (int j = m + 1; j <= r; ++j) {
        const double a = theta * (j - 1) * dx;
        const double w = partial_moment(kernel, j, dx, 1) / (j - 1);
        g += lambda1 * w * cplx(std::cos(a) - 1.0, -std::sin(a));
      }
      const double tail = tail_moment(kernel, x, 1);
      const double prefix = prefix_moment(kernel, x, 2);
      g += lambda1 * tail * (std::polar(1.0, theta * dx) - 1.0);
      g += lambda2 * (prefix + x * tail) * (2.0 * std::cos(theta * dx) - 2.0);
      return g;
    }
  }
  return 1.0;
}

cplx row_growth_factor(const StencilMatrix& matrix, int row, double theta, double lambda2) {
  const double dx = matrix.grid().dx();
  cplx s = 0.0;
  for (const auto& e : matrix.row(row)) {
    s += e.coefficient * std::polar(1.0, theta * (e.column - row) * dx);
  }
  return 1.0 + lambda2 * dx * dx * s;
}

double GrowthScan::min_over(RegionCaseKind kind) const {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& c : cases) {
    if (c.rcase.kind == kind) v = std::min(v, c.critical_lambda2);
  }
  return v;
}

GrowthScan cfl_scan(const Grid& grid, const Kernel& kernel, const Scheme& scheme,
                    const CflScanOptions& options) {
  const std::vector<double> thetas = theta_grid(grid, options.theta_points);
  const StencilMatrix matrix = assemble(grid, kernel, scheme);
  const std::vector<RegionCase> cases = region_cases(grid);

  GrowthScan scan;
  scan.cases.resize(cases.size());
  // g = 1 + lambda2 z(theta) in every case, so z is tabulated once per case.
#pragma omp parallel for schedule(dynamic) if (cases.size() * thetas.size() >= kParallelRows)
  for (std::size_t c = 0; c < cases.size(); ++c) {
    std::vector<cplx> z(thetas.size());
    for (std::size_t k = 0; k < thetas.size(); ++k) {
      z[k] = options.source == GrowthSource::Rows
                 ? row_growth_factor(matrix, representative_row(grid, cases[c]), thetas[k], 1.0)
                 : growth_factor(grid, kernel, cases[c], thetas[k], 1.0);
      z[k] -= 1.0;
    }
    auto worst = [&](double lambda2) {
      double best = -1.0;
      std::size_t arg = 0;
      for (std::size_t k = 0; k < z.size(); ++k) {
        const double a = std::abs(1.0 + lambda2 * z[k]);
        if (a > best) {
          best = a;
          arg = k;
        }
      }
      return std::pair{best, thetas[arg]};
    };
    const double limit = 1.0 + options.slack;
    double lo = 0.0;
    double hi = options.upper;
    auto [g_hi, arg_hi] = worst(hi);
    if (g_hi <= limit) {
      scan.cases[c] = {cases[c], hi, arg_hi};
      continue;
    }
    while (hi - lo > options.tolerance) {
      const double mid = 0.5 * (lo + hi);
      const auto [g_mid, arg_mid] = worst(mid);
      if (g_mid <= limit) {
        lo = mid;
      } else {
        hi = mid;
        arg_hi = arg_mid;
      }
    }
    scan.cases[c] = {cases[c], lo, arg_hi};
  }
  scan.overall_min = std::numeric_limits<double>::infinity();
  for (const auto& c : scan.cases) scan.overall_min = std::min(scan.overall_min, c.critical_lambda2);
  return scan;
}

std::vector<GrowthSample> growth_table(const Grid& grid, const Kernel& kernel,
                                       const Scheme& scheme, double lambda2, int theta_points,
                                       GrowthSource source) {
  const std::vector<double> thetas = theta_grid(grid, theta_points);
  const StencilMatrix matrix = assemble(grid, kernel, scheme);
  std::vector<GrowthSample> out;
  for (const RegionCase& rc : region_cases(grid)) {
    for (double th : thetas) {
      const cplx g = source == GrowthSource::Rows
                         ? row_growth_factor(matrix, representative_row(grid, rc), th, lambda2)
                         : growth_factor(grid, kernel, rc, th, lambda2);
      out.push_back({rc, th, g});
    }
  }
  return out;
}

}  // namespace qnl
