#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnl/analysis/manufactured.hpp"
#include "qnl/kernel.hpp"
#include "qnl/stencil.hpp"

namespace qnl {

/// Nodes entering the max-over-space-time error.
///   Interior:     i = 1 .. 2N-1
///   WithBoundary: every grid node, so a mismatch between the boundary data
///                 and the exact local solution on the nonlocal layer counts.
enum class ErrorNorm { Interior, WithBoundary };

std::string to_string(ErrorNorm norm);
ErrorNorm parse_error_norm(std::string_view name);

/// Scalar summaries of one manufactured-solution run.
struct RunMetrics {
  double max_error = 0.0;  // over all steps and the selected nodes
  double min_value = 0.0;  // min interior u_i^n over all steps, |x_i| <= RunSpec::min_window
  double argmin_x = 0.0;
  double argmin_t = 0.0;
  long steps = 0;
  std::vector<std::string> warnings;
};

struct RunSpec {
  int n_half = 50;
  int ratio_r = 3;
  Scheme scheme{};
  double lambda2 = 0.2;
  double final_time = 1.0;
  ErrorNorm norm = ErrorNorm::Interior;
  KernelProfile profile = KernelProfile::constant();
  /// Restricts min_value to nodes with |x_i| <= min_window (around the interface).
  double min_window = 2.0;
};

RunMetrics run_manufactured(const ManufacturedCase& mcase, const RunSpec& spec);

struct ConvergenceRow {
  int n_half;
  double dx;
  double error;
  std::optional<double> order;  // log2(e_{2h} / e_h); empty on the coarsest mesh
  double min_value;
};

struct ConvergenceReport {
  std::string case_name;
  Scheme scheme;
  int ratio_r;
  double lambda2;
  double final_time;
  ErrorNorm norm;
  std::vector<ConvergenceRow> rows;
};

/// Runs `case_name` on each N in `n_halves` (each must double the previous).
/// Throws NumericalGuardError for lambda2 > 1/2.
ConvergenceReport convergence_study(const std::string& case_name, const Scheme& scheme,
                                    const std::vector<int>& n_halves, int ratio_r,
                                    double lambda2, double final_time,
                                    ErrorNorm norm = ErrorNorm::Interior,
                                    const KernelProfile& profile = KernelProfile::constant());

}  // namespace qnl
