#include "qnl/analysis/convergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qnl {

std::string to_string(ErrorNorm norm) {
  return norm == ErrorNorm::Interior ? "interior" : "with-boundary";
}

ErrorNorm parse_error_norm(std::string_view name) {
  if (name == "interior") return ErrorNorm::Interior;
  if (name == "with-boundary") return ErrorNorm::WithBoundary;
  throw std::invalid_argument("unknown error norm '" + std::string(name) + "'");
}

RunMetrics run_manufactured(const ManufacturedCase& mcase, const RunSpec& spec) {
  const Grid grid(spec.n_half, spec.ratio_r);
  Problem problem{grid,
                  Kernel(grid.delta(), spec.profile),
                  spec.scheme,
                  mcase.forcing,
                  mcase.initial,
                  mcase.boundary,
                  spec.final_time,
                  spec.lambda2,
                  0};

  std::vector<double> x(static_cast<std::size_t>(grid.size()));
  for (int i = grid.first_index(); i <= grid.last_index(); ++i) x[grid.storage(i)] = grid.x(i);
  std::vector<double> exact(x.size());
  const int lo = spec.norm == ErrorNorm::Interior ? grid.storage(1) : 0;
  const int hi = spec.norm == ErrorNorm::Interior ? grid.storage(2 * grid.n_half() - 1)
                                                  : grid.size() - 1;
  const int interior_lo = grid.storage(1);
  const int interior_hi = grid.storage(2 * grid.n_half() - 1);

  RunMetrics m;
  m.min_value = std::numeric_limits<double>::infinity();
  auto observe = [&](long, double t, const Field& field) {
    mcase.exact(x, t, exact);
    const auto u = field.values();
    double err = m.max_error;
    for (int k = lo; k <= hi; ++k) err = std::max(err, std::abs(u[k] - exact[k]));
    m.max_error = err;
    for (int k = interior_lo; k <= interior_hi; ++k) {
      if (std::abs(x[k]) <= spec.min_window && u[k] < m.min_value) {
        m.min_value = u[k];
        m.argmin_x = x[k];
        m.argmin_t = t;
      }
    }
  };
  const Trajectory traj = solve(problem, observe);
  m.steps = traj.steps;
  m.warnings = traj.warnings;
  return m;
}

ConvergenceReport convergence_study(const std::string& case_name, const Scheme& scheme,
                                    const std::vector<int>& n_halves, int ratio_r,
                                    double lambda2, double final_time, ErrorNorm norm,
                                    const KernelProfile& profile) {
  if (n_halves.empty()) throw std::invalid_argument("convergence_study: empty mesh list");
  for (std::size_t k = 1; k < n_halves.size(); ++k) {
    if (n_halves[k] != 2 * n_halves[k - 1]) {
      throw std::invalid_argument("convergence_study: meshes must form a halving sequence");
    }
  }
  const ManufacturedCase mcase = manufactured_case(case_name);
  ConvergenceReport report{case_name, scheme, ratio_r, lambda2, final_time, norm, {}};
  for (int n : n_halves) {
    RunSpec spec{n, ratio_r, scheme, lambda2, final_time, norm, profile};
    const RunMetrics m = run_manufactured(mcase, spec);
    ConvergenceRow row{n, 1.0 / n, m.max_error, std::nullopt, m.min_value};
    if (!report.rows.empty()) row.order = std::log2(report.rows.back().error / m.max_error);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace qnl
