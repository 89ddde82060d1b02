#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qnl/grid.hpp"
#include "qnl/kernel.hpp"
#include "qnl/stencil.hpp"

namespace qnl {

/// Batch evaluation of a function of (x, t): out[k] = f(x[k], t).
using SpaceTimeFunction =
    std::function<void(std::span<const double> x, double t, std::span<double> out)>;

/// Wraps a scalar f(x, t) as a SpaceTimeFunction.
SpaceTimeFunction pointwise(std::function<double(double, double)> f);

/// f = c everywhere.
SpaceTimeFunction constant_function(double c);

struct Problem {
  Grid grid;
  Kernel kernel;
  Scheme scheme;
  SpaceTimeFunction forcing;
  SpaceTimeFunction initial;   // evaluated at t = 0
  SpaceTimeFunction boundary;  // applied on NonlocalBoundary and LocalBoundary nodes
  double final_time = 1.0;
  double lambda2 = 0.2;
  /// Record every k-th step; 0 keeps only n = 0 and the final step.
  int snapshot_stride = 0;
};

struct Snapshot {
  double t;
  long step;
  Field u;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<std::string> warnings;
  double dt = 0.0;
  long steps = 0;
};

/// Called with (n, t^n, u^n) for n = 0 .. N_T, after boundary data is applied.
using StepObserver = std::function<void(long n, double t, const Field& u)>;

/// Time-step size and count: dt = lambda2 dx^2, N_T = ceil(T / dt).
struct TimeGrid {
  double dt;
  long steps;

  /// t^n; the last step is shortened so t^{N_T} = T exactly.
  [[nodiscard]] double time(long n, double final_time) const;
};

TimeGrid make_time_grid(double dx, double lambda2, double final_time);

/// Stability guard: throws NumericalGuardError if lambda2 > 1/2 (or not
/// positive), and returns a warning string when 1/4 < lambda2 <= 1/2.
std::string check_lambda2(double lambda2);

/// u^{n+1}_i = u^n_i + dt ((L u^n)_i + f_i) on interior rows; boundary
/// entries are copied unchanged. f_values has interior_size() entries.
Field step(const Field& u, const StencilMatrix& matrix, std::span<const double> f_values,
           double dt);

/// Same update written into `next` (sized like u) using `scratch`
/// (interior_size() entries) for L u. Allocation-free.
void step_into(const Field& u, const StencilMatrix& matrix, std::span<const double> f_values,
               double dt, std::span<double> scratch, Field& next);

Trajectory solve(const Problem& problem, const StepObserver& observer = {});

namespace reference {

/// Serial step built on reference::apply.
Field step(const Field& u, const StencilMatrix& matrix, std::span<const double> f_values,
           double dt);

}  // namespace reference

}  // namespace qnl
