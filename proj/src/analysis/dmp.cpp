#include "qnl/analysis/dmp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qnl {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct DataBounds {
  double max_g = kNegInf;
  double max_abs_g = 0.0;
  double max_q = kNegInf;
  double max_abs_q = 0.0;
  double max_f = kNegInf;
  double max_abs_f = 0.0;
};

std::vector<double> positions(const Grid& grid, bool interior) {
  std::vector<double> x;
  for (int i = grid.first_index(); i <= grid.last_index(); ++i) {
    if (grid.is_interior(i) == interior) x.push_back(grid.x(i));
  }
  return x;
}

DataBounds data_bounds(const Problem& problem) {
  const Grid& grid = problem.grid;
  const TimeGrid tg = make_time_grid(grid.dx(), problem.lambda2, problem.final_time);
  const std::vector<double> xi = positions(grid, true);
  const std::vector<double> xb = positions(grid, false);
  DataBounds b;
  std::vector<double> v(xi.size());
  problem.initial(xi, 0.0, v);
  for (double g : v) {
    b.max_g = std::max(b.max_g, g);
    b.max_abs_g = std::max(b.max_abs_g, std::abs(g));
  }
  std::vector<double> q(xb.size());
  for (long n = 0; n <= tg.steps; ++n) {
    const double t = tg.time(n, problem.final_time);
    problem.boundary(xb, t, q);
    for (double s : q) {
      b.max_q = std::max(b.max_q, s);
      b.max_abs_q = std::max(b.max_abs_q, std::abs(s));
    }
    if (n == tg.steps) break;
    problem.forcing(xi, t, v);
    for (double f : v) {
      b.max_f = std::max(b.max_f, f);
      b.max_abs_f = std::max(b.max_abs_f, std::abs(f));
    }
  }
  return b;
}

/// Fills bound and the hypothesis fields; returns false if not applicable.
bool prepare(const Problem& problem, DmpMode mode, DynamicDmpReport& report) {
  if (problem.scheme.variant != SchemeVariant::NewStabilityForm) {
    report.reason = "scheme is not new-stability";
    return false;
  }
  if (problem.lambda2 > 0.25) {
    report.reason = "lambda2 exceeds 1/4";
    return false;
  }
  const DataBounds b = data_bounds(problem);
  if (mode == DmpMode::Bound) {
    if (b.max_f > 0.0) {
      report.reason = "forcing is positive somewhere";
      return false;
    }
    report.bound = std::max(b.max_g, b.max_q);
  } else {
    report.bound = problem.final_time * b.max_abs_f + std::max(b.max_abs_g, b.max_abs_q);
  }
  report.hypothesis_satisfied = true;
  report.max_value = kNegInf;
  report.worst_margin = kNegInf;
  return true;
}

void check_field(const Field& u, double tol, DynamicDmpReport& report) {
  for (double v : u.values()) {
    report.max_value = std::max(report.max_value, v);
    report.worst_margin = std::max(report.worst_margin, v - report.bound);
    if (v > report.bound + tol) ++report.violations;
  }
  ++report.checked_steps;
}

void finish(DynamicDmpReport& report) {
  report.verdict = report.violations == 0 ? DmpVerdict::Pass : DmpVerdict::Fail;
}

}  // namespace

std::string to_string(DmpVerdict verdict) {
  switch (verdict) {
    case DmpVerdict::Pass: return "pass";
    case DmpVerdict::Fail: return "fail";
    case DmpVerdict::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

StaticDmpReport static_dmp_check(const StencilMatrix& matrix, const Field& field, double tol) {
  const Grid& grid = matrix.grid();
  if (tol < 0.0) {
    double max_coef = 0.0;
    for (double c : matrix.coefficients()) max_coef = std::max(max_coef, std::abs(c));
    double max_u = 0.0;
    for (double v : field.values()) max_u = std::max(max_u, std::abs(v));
    tol = 1e-12 * max_coef * std::max(max_u, 1.0);
  }
  const std::vector<double> lu = apply(matrix, field);
  StaticDmpReport report;
  report.hypothesis_holds = true;
  for (int i = 1; i <= grid.interior_size(); ++i) {
    if (lu[i - 1] < -tol) {
      report.hypothesis_holds = false;
      report.counterexample_row = i;
      break;
    }
  }
  report.max_interior = kNegInf;
  report.max_boundary = kNegInf;
  int argmax = 1;
  for (int i = grid.first_index(); i <= grid.last_index(); ++i) {
    if (grid.is_interior(i)) {
      if (field[i] > report.max_interior) {
        report.max_interior = field[i];
        argmax = i;
      }
    } else {
      report.max_boundary = std::max(report.max_boundary, field[i]);
    }
  }
  if (!report.hypothesis_holds) {
    report.verdict = DmpVerdict::NotApplicable;
  } else if (report.max_interior <= report.max_boundary + 1e-12 * std::max(1.0, std::abs(report.max_boundary))) {
    report.verdict = DmpVerdict::Pass;
  } else {
    report.verdict = DmpVerdict::Fail;
    report.counterexample_row = argmax;
  }
  return report;
}

DynamicDmpReport dynamic_dmp_check(const Trajectory& trajectory, const Problem& problem,
                                   DmpMode mode, double tol) {
  DynamicDmpReport report;
  if (!prepare(problem, mode, report)) return report;
  for (const auto& snap : trajectory.snapshots) check_field(snap.u, tol, report);
  finish(report);
  return report;
}

DynamicDmpReport dynamic_dmp_run(const Problem& problem, DmpMode mode, double tol) {
  DynamicDmpReport report;
  if (!prepare(problem, mode, report)) return report;
  Problem quiet = problem;
  quiet.snapshot_stride = 0;
  solve(quiet, [&](long, double, const Field& u) { check_field(u, tol, report); });
  finish(report);
  return report;
}

double StabilityCoefficients::sum() const {
  double s = A + D + E;
  for (std::size_t k = 0; k < B.size(); ++k) s += B[k] + C[k];
  return s;
}

double StabilityCoefficients::min() const {
  double v = std::min({A, D, E});
  for (std::size_t k = 0; k < B.size(); ++k) v = std::min({v, B[k], C[k]});
  return v;
}

StabilityCoefficients stability_coefficients(const Grid& grid, const Kernel& kernel, int i,
                                             double lambda2) {
  if (grid.classify(i) != Region::Transitional) {
    throw std::invalid_argument("stability_coefficients: index " + std::to_string(i) +
                                " is not transitional");
  }
  const MomentTable mt(kernel, grid.ratio_r());
  const int m = i - grid.n_half();
  const double dx = grid.dx();
  const double x = m * dx;
  const double lambda1 = lambda2 * dx;
  const double tail = mt.tail1(m);
  const double local = mt.prefix2(m) + x * tail;

  StabilityCoefficients c;
  double sum2 = 0.0;
  for (int k = m + 1; k <= grid.ratio_r(); ++k) {
    const double km1 = k - 1;
    const double second = lambda2 * mt.partial(k, 2) / (2.0 * km1 * km1);
    const double first = lambda1 * mt.partial(k, 1) / (2.0 * km1);
    c.k.push_back(k);
    c.B.push_back(second - first);
    c.C.push_back(second + first);
    sum2 += mt.partial(k, 2) / (km1 * km1);
  }
  c.A = 1.0 - lambda2 * sum2 - lambda1 * tail - 2.0 * lambda2 * local;
  c.D = lambda1 * tail + lambda2 * local;
  c.E = lambda2 * local;
  return c;
}

std::vector<StencilEntry> one_step_weights(const StencilMatrix& matrix, int row, double lambda2) {
  const double scale = lambda2 * matrix.grid().dx() * matrix.grid().dx();
  std::vector<StencilEntry> w = matrix.row(row);
  for (auto& e : w) {
    e.coefficient *= scale;
    if (e.column == row) e.coefficient += 1.0;
  }
  return w;
}

}  // namespace qnl

namespace qnl {

Problem random_dmp_problem(std::uint64_t seed, int trial, DmpMode mode, double& final_time) {
  // One independent stream per trial so trials can be reproduced in isolation.
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  auto uniform = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  auto integer = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };

  const int n = integer(20, 100);
  const int r = integer(1, 5);
  final_time = uniform(0.01, 0.1);

  const int pieces = integer(1, 8);
  std::vector<double> edges{-1.0};
  for (int p = 1; p < pieces; ++p) edges.push_back(uniform(-1.0, 1.0));
  std::sort(edges.begin(), edges.end());
  std::vector<double> levels(static_cast<std::size_t>(pieces));
  for (double& v : levels) v = mode == DmpMode::Bound ? uniform(-2.0, 0.0) : uniform(-2.0, 2.0);
  const double omega_f = uniform(0.0, 50.0);
  auto forcing = [edges, levels, omega_f](double x, double t) {
    const auto p = std::upper_bound(edges.begin(), edges.end(), x) - edges.begin();
    const double level = levels[static_cast<std::size_t>(std::max<std::ptrdiff_t>(p - 1, 0))];
    return level * 0.5 * (1.0 + std::cos(omega_f * t));
  };

  std::array<double, 4> amp{};
  std::array<double, 4> phase{};
  double total = 0.0;
  for (std::size_t k = 0; k < amp.size(); ++k) {
    amp[k] = uniform(-1.0, 1.0);
    phase[k] = uniform(0.0, 2.0 * std::numbers::pi);
    total += std::abs(amp[k]);
  }
  const double g_scale = uniform(0.1, 1.0) / total;
  auto initial = [amp, phase, g_scale](double x, double) {
    double s = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) {
      s += amp[k] * std::sin((k + 1) * std::numbers::pi * x + phase[k]);
    }
    return g_scale * s;
  };

  const double q_left = uniform(-1.0, 1.0);
  const double q_right = uniform(-1.0, 1.0);
  const double q_amp = uniform(0.0, 0.5);
  const double omega_q = uniform(0.0, 30.0);
  auto boundary = [=](double x, double t) {
    return (x < 0.0 ? q_left : q_right) + q_amp * std::sin(omega_q * t);
  };

  const Grid grid(n, r);
  return Problem{grid,
                 constant_kernel(grid.delta()),
                 Scheme{SchemeVariant::NewStabilityForm},
                 pointwise(forcing),
                 pointwise(initial),
                 pointwise(boundary),
                 final_time,
                 0.25,
                 0};
}

DmpTrialSummary run_dmp_trials(std::uint64_t seed, int trials, DmpMode mode) {
  DmpTrialSummary summary;
  summary.seed = seed;
  summary.mode = mode;
  summary.worst_margin = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < trials; ++k) {
    double final_time = 0.0;
    const Problem problem = random_dmp_problem(seed, k, mode, final_time);
    DmpTrial trial{problem.grid.n_half(), problem.grid.ratio_r(), final_time,
                   dynamic_dmp_run(problem, mode)};
    if (!trial.report.hypothesis_satisfied) {
      ++summary.not_applicable;
    } else {
      summary.violations += trial.report.violations;
      summary.worst_margin = std::max(summary.worst_margin, trial.report.worst_margin);
    }
    summary.trials.push_back(std::move(trial));
  }
  return summary;
}

}  // namespace qnl
