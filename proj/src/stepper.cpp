#include "qnl/stepper.hpp"

#include <cmath>
#include <stdexcept>

#include "qnl/errors.hpp"

namespace qnl {

SpaceTimeFunction pointwise(std::function<double(double, double)> f) {
  return [f = std::move(f)](std::span<const double> x, double t, std::span<double> out) {
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = f(x[k], t);
  };
}

SpaceTimeFunction constant_function(double c) {
  return [c](std::span<const double>, double, std::span<double> out) {
    for (double& v : out) v = c;
  };
}

double TimeGrid::time(long n, double final_time) const {
  return n >= steps ? final_time : static_cast<double>(n) * dt;
}

TimeGrid make_time_grid(double dx, double lambda2, double final_time) {
  if (!(final_time > 0.0)) throw std::invalid_argument("final time must be positive");
  if (!(lambda2 > 0.0)) throw std::invalid_argument("lambda2 must be positive");
  const double dt = lambda2 * dx * dx;
  // The 1e-12 slack keeps T/dt that is an integer up to rounding from adding a step.
  const auto steps = static_cast<long>(std::ceil(final_time / dt - 1e-12));
  return {dt, std::max(steps, 1L)};
}

std::string check_lambda2(double lambda2) {
  if (!(lambda2 > 0.0) || !std::isfinite(lambda2)) {
    throw NumericalGuardError("lambda2 must be a positive finite number");
  }
  if (lambda2 > 0.5) {
    throw NumericalGuardError("lambda2 = " + std::to_string(lambda2) +
                              " exceeds 1/2; explicit Euler is unstable on local rows");
  }
  if (lambda2 > 0.25) {
    return "lambda2 = " + std::to_string(lambda2) +
           " exceeds 1/4; the discrete maximum principle is not guaranteed";
  }
  return {};
}

void step_into(const Field& u, const StencilMatrix& matrix, std::span<const double> f_values,
               double dt, std::span<double> scratch, Field& next) {
  const Grid& grid = matrix.grid();
  const int rows = grid.interior_size();
  if (static_cast<int>(u.size()) != grid.size() || next.size() != u.size() ||
      static_cast<int>(f_values.size()) != rows || static_cast<int>(scratch.size()) != rows) {
    throw std::invalid_argument("step: field length does not match the grid");
  }
  apply(matrix, u.values(), scratch);
  const auto in = u.values();
  auto out = next.values();
  const int first = grid.storage(1);
  for (int k = 0; k < first; ++k) out[k] = in[k];
  for (int k = 0; k < rows; ++k) {
    out[first + k] = in[first + k] + dt * (scratch[k] + f_values[k]);
  }
  for (std::size_t k = first + rows; k < in.size(); ++k) out[k] = in[k];
}

Field step(const Field& u, const StencilMatrix& matrix, std::span<const double> f_values,
           double dt) {
  Field next = u;
  std::vector<double> scratch(static_cast<std::size_t>(matrix.rows()));
  step_into(u, matrix, f_values, dt, scratch, next);
  return next;
}

Trajectory solve(const Problem& problem, const StepObserver& observer) {
  const Grid& grid = problem.grid;
  Trajectory traj;
  if (auto warning = check_lambda2(problem.lambda2); !warning.empty()) {
    traj.warnings.push_back(std::move(warning));
  }
  if (problem.snapshot_stride < 0) throw std::invalid_argument("snapshot_stride must be >= 0");
  if (!problem.forcing || !problem.initial || !problem.boundary) {
    throw std::invalid_argument("problem data functions must all be set");
  }
  const StencilMatrix matrix = assemble(grid, problem.kernel, problem.scheme);
  const TimeGrid tg = make_time_grid(grid.dx(), problem.lambda2, problem.final_time);
  traj.dt = tg.dt;
  traj.steps = tg.steps;

  const int rows = grid.interior_size();
  std::vector<double> x_all(static_cast<std::size_t>(grid.size()));
  for (int i = grid.first_index(); i <= grid.last_index(); ++i) x_all[grid.storage(i)] = grid.x(i);
  const std::span<const double> x_interior(x_all.data() + grid.storage(1), rows);
  std::vector<int> boundary_slots;
  std::vector<double> x_boundary;
  for (int i = grid.first_index(); i <= grid.last_index(); ++i) {
    if (grid.is_boundary(i)) {
      boundary_slots.push_back(grid.storage(i));
      x_boundary.push_back(grid.x(i));
    }
  }
  std::vector<double> q(x_boundary.size());
  std::vector<double> f(static_cast<std::size_t>(rows));
  std::vector<double> scratch(static_cast<std::size_t>(rows));

  Field u(grid);
  Field next(grid);
  auto apply_boundary = [&](Field& field, double t) {
    problem.boundary(x_boundary, t, q);
    auto v = field.values();
    for (std::size_t k = 0; k < q.size(); ++k) v[boundary_slots[k]] = q[k];
  };
  auto record = [&](long n, double t, const Field& field) {
    const bool last = n == tg.steps;
    const bool strided = problem.snapshot_stride > 0 && n % problem.snapshot_stride == 0;
    if (n == 0 || last || strided) traj.snapshots.push_back({t, n, field});
    if (observer) observer(n, t, field);
  };

  problem.initial(x_all, 0.0, u.values());
  apply_boundary(u, 0.0);
  record(0, 0.0, u);

  for (long n = 0; n < tg.steps; ++n) {
    const double t = tg.time(n, problem.final_time);
    const double t_next = tg.time(n + 1, problem.final_time);
    problem.forcing(x_interior, t, f);
    step_into(u, matrix, f, t_next - t, scratch, next);
    apply_boundary(next, t_next);
    for (double v : next.values()) {
      if (!std::isfinite(v)) {
        throw NumericalGuardError("non-finite solution value at step " + std::to_string(n + 1));
      }
    }
    std::swap(u, next);
    record(n + 1, t_next, u);
  }
  return traj;
}

namespace reference {

Field step(const Field& u, const StencilMatrix& matrix, std::span<const double> f_values,
           double dt) {
  const Grid& grid = matrix.grid();
  std::vector<double> lu(static_cast<std::size_t>(grid.interior_size()));
  reference::apply(matrix, u.values(), lu);
  Field next = u;
  for (int i = 1; i <= grid.interior_size(); ++i) {
    next[i] = u[i] + dt * (lu[i - 1] + f_values[i - 1]);
  }
  return next;
}

}  // namespace reference
}  // namespace qnl
