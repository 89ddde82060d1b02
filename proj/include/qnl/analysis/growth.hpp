#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qnl/grid.hpp"
#include "qnl/kernel.hpp"
#include "qnl/stencil.hpp"

namespace qnl {

enum class RegionCaseKind { Nonlocal, Transitional, Local };

/// Region for a von Neumann analysis; `node` is the grid index of a
/// transitional node (N+1 .. N+r) and unused otherwise.
struct RegionCase {
  RegionCaseKind kind = RegionCaseKind::Local;
  int node = 0;

  static RegionCase nonlocal() { return {RegionCaseKind::Nonlocal, 0}; }
  static RegionCase transitional(int node) { return {RegionCaseKind::Transitional, node}; }
  static RegionCase local() { return {RegionCaseKind::Local, 0}; }
};

std::string to_string(RegionCaseKind kind);

/// Closed-form growth factors of the new scheme, with lambda1 = lambda2 dx:
///   nonlocal      1 + l2 sum_j 2(cos(j th dx) - 1)/j^2 M2_j
///   transitional  1 + l1 sum_{j>m} [(cos((j-1) th dx) - 1) - i sin((j-1) th dx)]/(j-1) M1_j
///                   + l1 T1(x_i)(e^{i th dx} - 1) + l2 (P2(x_i) + x_i T1(x_i))(2cos(th dx) - 2)
///   local         1 + l2 (2cos(th dx) - 2)
/// where M_j are partial moments, T1 the first tail moment and P2 the second
/// prefix moment. Throws std::invalid_argument for a transitional node
/// outside N+1 .. N+r.
std::complex<double> growth_factor(const Grid& grid, const Kernel& kernel, RegionCase rcase,
                                   double theta, double lambda2);

/// Growth factor of one assembled row: 1 + lambda2 dx^2 sum_c a_{ic} e^{i th (c - i) dx}.
std::complex<double> row_growth_factor(const StencilMatrix& matrix, int row, double theta,
                                       double lambda2);

struct CriticalValue {
  RegionCase rcase;
  double critical_lambda2;  // largest lambda2 in (0, upper] with max |g| <= 1 + slack
  double argmax_theta;      // most amplified wavenumber just above the critical value
};

struct GrowthScan {
  std::vector<CriticalValue> cases;  // nonlocal, transitional N+1 .. N+r, local
  double overall_min = 0.0;

  [[nodiscard]] double min_over(RegionCaseKind kind) const;
};

enum class GrowthSource {
  Rows,       // symbol of the assembled rows for the requested scheme
  Displayed,  // closed-form factors above (scheme argument ignored)
};

struct CflScanOptions {
  int theta_points = 4096;  // theta_k = k pi / (dx theta_points), k = 1 .. theta_points
  double tolerance = 1e-4;
  double upper = 1.0;
  double slack = 1e-12;
  GrowthSource source = GrowthSource::Rows;
};

GrowthScan cfl_scan(const Grid& grid, const Kernel& kernel, const Scheme& scheme,
                    const CflScanOptions& options = {});

struct GrowthSample {
  RegionCase rcase;
  double theta;
  std::complex<double> g;
};

/// g(theta) on the scan's theta grid for every region case at a fixed lambda2.
std::vector<GrowthSample> growth_table(const Grid& grid, const Kernel& kernel,
                                       const Scheme& scheme, double lambda2, int theta_points,
                                       GrowthSource source = GrowthSource::Rows);

}  // namespace qnl
