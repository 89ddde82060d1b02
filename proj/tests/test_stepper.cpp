#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qnl/analysis/manufactured.hpp"
#include "qnl/errors.hpp"
#include "qnl/stepper.hpp"

using namespace qnl;

namespace {

Problem zero_problem(int n, int r, double lambda2, double t_final) {
  const Grid g(n, r);
  return Problem{g, constant_kernel(g.delta()), Scheme{}, constant_function(0.0),
                 constant_function(0.0), constant_function(0.0), t_final, lambda2, 0};
}

}  // namespace

TEST_SUITE("stepper") {
  TEST_CASE("time grid: last step lands on T") {
    const TimeGrid tg = make_time_grid(0.1, 0.3, 1.0);
    CHECK(tg.dt == doctest::Approx(0.003));
    CHECK(tg.steps == 334);
    CHECK(tg.time(333, 1.0) == doctest::Approx(0.999));
    CHECK(tg.time(334, 1.0) == 1.0);
    CHECK(make_time_grid(0.1, 0.25, 1.0).steps == 400);
  }

  TEST_CASE("step on zero data and on a local impulse") {
    const Grid g(20, 3);
    const StencilMatrix m = assemble(g, constant_kernel(g.delta()), Scheme{});
    std::vector<double> f(static_cast<std::size_t>(g.interior_size()), 0.0);
    const Field z = step(Field(g), m, f, 0.1);
    for (double v : z.values()) CHECK(v == 0.0);

    Field e(g);
    e[30] = 1.0;
    const double dt = 0.25 * g.dx() * g.dx();
    const Field u1 = step(e, m, f, dt);
    CHECK(u1[30] == doctest::Approx(0.5));
    CHECK(u1[29] == doctest::Approx(0.25));
    CHECK(u1[31] == doctest::Approx(0.25));
    const Field r1 = reference::step(e, m, f, dt);
    for (int i = g.first_index(); i <= g.last_index(); ++i) CHECK(u1[i] == r1[i]);
  }

  TEST_CASE("quadratic with f = -2 is steady on local rows") {
    const Grid g(20, 3);
    const StencilMatrix m = assemble(g, constant_kernel(g.delta()), Scheme{});
    Field u(g);
    for (int i = g.first_index(); i <= g.last_index(); ++i) u[i] = g.x(i) * g.x(i);
    std::vector<double> f(static_cast<std::size_t>(g.interior_size()), -2.0);
    const Field u1 = step(u, m, f, 1e-4);
    for (int i = 24; i <= 39; ++i) CHECK(u1[i] == doctest::Approx(u[i]).epsilon(1e-13));
  }

  TEST_CASE("zero data stays exactly zero") {
    const Trajectory t = solve(zero_problem(30, 3, 0.25, 0.05));
    REQUIRE(t.snapshots.size() == 2);
    CHECK(t.snapshots.front().t == 0.0);
    CHECK(t.snapshots.back().t == 0.05);
    for (const auto& s : t.snapshots) {
      for (double v : s.u.values()) CHECK(v == 0.0);
    }
  }

  TEST_CASE("lambda2 guards") {
    CHECK_THROWS_AS(solve(zero_problem(20, 2, 0.75, 0.01)), NumericalGuardError);
    CHECK_THROWS_AS(solve(zero_problem(20, 2, 0.0, 0.01)), NumericalGuardError);
    const Trajectory t = solve(zero_problem(20, 2, 0.45, 0.01));
    CHECK(t.warnings.size() == 1);
    CHECK(solve(zero_problem(20, 2, 0.25, 0.01)).warnings.empty());
  }

  TEST_CASE("snapshot stride and boundary data at every recorded time") {
    Problem p = zero_problem(20, 2, 0.2, 0.01);
    p.boundary = pointwise([](double x, double t) { return x + t; });
    p.snapshot_stride = 5;
    const Trajectory t = solve(p);
    REQUIRE(t.snapshots.size() >= 3);
    for (std::size_t k = 1; k < t.snapshots.size(); ++k) {
      CHECK(t.snapshots[k].t > t.snapshots[k - 1].t);
    }
    for (const auto& s : t.snapshots) {
      CHECK(s.u[-1] == doctest::Approx(p.grid.x(-1) + s.t));
      CHECK(s.u[40] == doctest::Approx(1.0 + s.t));
    }
    CHECK(t.snapshots.back().step == t.steps);
  }

  TEST_CASE("f = -1, zero data, lambda2 = 1/4 never goes positive") {
    Problem p = zero_problem(40, 3, 0.25, 0.2);
    p.forcing = constant_function(-1.0);
    double mx = -1.0;
    solve(p, [&](long, double, const Field& u) {
      for (double v : u.values()) mx = std::max(mx, v);
    });
    CHECK(mx <= 0.0);
  }

  TEST_CASE("non-finite state trips the guard") {
    Problem p = zero_problem(20, 2, 0.25, 0.01);
    p.forcing = constant_function(std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(solve(p), NumericalGuardError);
  }

  TEST_CASE("solve matches the dense explicit-Euler oracle on example 2") {
    const ManufacturedCase c = manufactured_case("example2");
    const Grid g(20, 3);
    const Problem p{g, constant_kernel(g.delta()), Scheme{}, c.forcing, c.initial, c.boundary, 0.3, 0.2, 0};
    std::vector<double> x(static_cast<std::size_t>(g.size()));
    for (int i = g.first_index(); i <= g.last_index(); ++i) x[g.storage(i)] = g.x(i);
    std::vector<double> ex(x.size());
    double err = 0.0;
    solve(p, [&](long n, double t, const Field& u) {
      if (n == 0) return;
      c.exact(x, t, ex);
      for (int i = 1; i <= g.interior_size(); ++i) err = std::max(err, std::abs(u[i] - ex[g.storage(i)]));
    });
    auto exact = [](double xx, double t) { const double p2 = xx - xx * xx * xx; return std::exp(-t) * p2 * p2; };
    auto forcing = [](double xx, double t) {
      const double x2 = xx * xx;
      const double p2 = xx - xx * x2;
      return -std::exp(-t) * (p2 * p2 + (2 - 24 * x2 + 30 * x2 * x2));
    };
    const double want = oracle::dense_error(20, 3, {0}, 0.2, 0.3, exact, forcing);
    CHECK(err == doctest::Approx(want).epsilon(1e-9));
  }
}
