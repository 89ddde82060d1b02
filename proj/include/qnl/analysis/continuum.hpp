#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "qnl/grid.hpp"
#include "qnl/kernel.hpp"
#include "qnl/stencil.hpp"

namespace qnl {

/// A function with its first two derivatives supplied.
struct SmoothFunction {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
};

enum class ContinuumBranch { Nonlocal, Transitional, Local };

/// Branch used by the coupled operator at x: (-1, 0) nonlocal, [0, delta]
/// transitional, (delta, 1) local.
ContinuumBranch continuum_branch(const Kernel& kernel, double x);

/// Continuum coupled operator:
///   nonlocal      int_0^delta (u(x+s) - 2u(x) + u(x-s)) gamma_delta(s) ds
///   transitional  int_x^delta gamma_delta(s)(u(x-s) - u(x)) ds + T1(x) u'(x)
///                   + (P2(x) + x T1(x)) u''(x)
///   local         u''(x)
/// Integrals use adaptive Gauss-Legendre at relative tolerance 1e-10.
/// Throws std::out_of_range for x outside (-1, 1).
double continuum_qnl_apply(const Kernel& kernel, const SmoothFunction& u, double x);

/// Evaluates a given branch regardless of where x falls (x must still be in
/// (-1, 1); the transitional branch also needs x in [0, delta]).
double continuum_qnl_apply(const Kernel& kernel, const SmoothFunction& u, double x,
                           ContinuumBranch branch);

struct TruncationLevel {
  int n_half;
  double dx;
  /// max_i |(L_h u)_i - (L u)(x_i)| over the rows of each discrete region,
  /// indexed by ContinuumBranch. Each row is compared with the branch of its
  /// discrete region (so x_N = 0 uses the nonlocal branch).
  std::array<double, 3> max_error{};
};

struct TruncationReport {
  std::vector<TruncationLevel> levels;
  /// orders[k][b] = log2(e_k / e_{k+1}) for region b; empty when both errors
  /// are below `floor`.
  std::vector<std::array<std::optional<double>, 3>> orders;
  double floor = 0.0;
};

/// Consistency study on halving meshes (each N must double the previous).
TruncationReport truncation_order(const std::vector<int>& n_halves, int ratio_r,
                                  const KernelProfile& profile, const Scheme& scheme,
                                  const SmoothFunction& u, double floor = 1e-11);

}  // namespace qnl
