#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qnl/stencil.hpp"
#include "qnl/stepper.hpp"

namespace qnl {

enum class DmpVerdict { Pass, Fail, NotApplicable };

std::string to_string(DmpVerdict verdict);

struct StaticDmpReport {
  bool hypothesis_holds = false;  // (L u)_i >= -tol on every interior row
  double max_interior = 0.0;
  double max_boundary = 0.0;
  DmpVerdict verdict = DmpVerdict::NotApplicable;
  /// NotApplicable: first row breaking the hypothesis. Fail: row carrying the
  /// interior maximum.
  std::optional<int> counterexample_row;
};

/// Checks: if -L u <= 0 on every interior row then max over all nodes is
/// attained on the boundary. `tol` scales with max|a_ij| max|u| when negative.
StaticDmpReport static_dmp_check(const StencilMatrix& matrix, const Field& field,
                                 double tol = -1.0);

enum class DmpMode {
  Bound,      // f <= 0: u <= max{max g, max q}
  Corollary,  // any f: u <= T ||f||_inf + max{||g||_inf, ||q||_inf}
};

struct DynamicDmpReport {
  bool hypothesis_satisfied = false;
  std::string reason;  // why the hypothesis failed, empty otherwise
  double bound = 0.0;
  double max_value = 0.0;
  double worst_margin = 0.0;  // max over checked values of u - bound
  long violations = 0;        // values above bound + tol
  long checked_steps = 0;
  DmpVerdict verdict = DmpVerdict::NotApplicable;
};

/// Checks the snapshots of a trajectory produced from `problem`. The data
/// bounds use g at t = 0 and f, q at every step time t^n.
DynamicDmpReport dynamic_dmp_check(const Trajectory& trajectory, const Problem& problem,
                                   DmpMode mode = DmpMode::Bound, double tol = 1e-12);

/// Solves `problem` and checks every step (not only recorded snapshots).
DynamicDmpReport dynamic_dmp_run(const Problem& problem, DmpMode mode = DmpMode::Bound,
                                 double tol = 1e-12);

/// Weights of the one-step update at a transitional node of the
/// stability-form scheme:
///   u_i^{n+1} = A u_i + sum_k (B_k u_{i+k-1} + C_k u_{i-k+1}) + D u_{i+1} + E u_{i-1},
/// k = m+1 .. r with m = i - N.
struct StabilityCoefficients {
  double A = 0.0;
  std::vector<int> k;  // the k of each B/C entry
  std::vector<double> B;
  std::vector<double> C;
  double D = 0.0;
  double E = 0.0;

  [[nodiscard]] double sum() const;
  [[nodiscard]] double min() const;
};

/// Throws std::invalid_argument if i is not in N+1 .. N+r.
StabilityCoefficients stability_coefficients(const Grid& grid, const Kernel& kernel, int i,
                                             double lambda2);

/// Weights of u^{n+1}_i = sum_c w_c u^n_c for an interior row (identity plus
/// lambda2 dx^2 times the row), columns as grid indices.
std::vector<StencilEntry> one_step_weights(const StencilMatrix& matrix, int row, double lambda2);

}  // namespace qnl

namespace qnl {

/// Randomized dynamic-DMP suite: N in [20, 100], r in [1, 5], lambda2 = 1/4,
/// new-stability scheme, piecewise-constant f <= 0 (Bound mode) or of either
/// sign (Corollary mode), bounded random g and q, T in [0.01, 0.1].
struct DmpTrial {
  int n_half;
  int ratio_r;
  double final_time;
  DynamicDmpReport report;
};

struct DmpTrialSummary {
  std::uint64_t seed = 0;
  DmpMode mode = DmpMode::Bound;
  std::vector<DmpTrial> trials;
  long violations = 0;
  long not_applicable = 0;
  double worst_margin = 0.0;
};

Problem random_dmp_problem(std::uint64_t seed, int trial, DmpMode mode, double& final_time);

DmpTrialSummary run_dmp_trials(std::uint64_t seed, int trials, DmpMode mode = DmpMode::Bound);

}  // namespace qnl
