// Serial reference vs OpenMP operator application, and one full time step.

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "qnl/grid.hpp"
#include "qnl/kernel.hpp"
#include "qnl/stencil.hpp"
#include "qnl/stepper.hpp"

using namespace qnl;

namespace {

struct Setup {
  Grid grid;
  StencilMatrix matrix;
  Field u;
  std::vector<double> out;

  Setup(int n, int r)
      : grid(n, r),
        matrix(assemble(grid, constant_kernel(grid.delta()), Scheme{})),
        u(grid),
        out(grid.interior_size()) {
    for (int i = grid.first_index(); i <= grid.last_index(); ++i) u[i] = std::sin(3.0 * grid.x(i));
  }
};

void BM_ApplySerial(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    reference::apply(s.matrix, s.u.values(), s.out);
    benchmark::DoNotOptimize(s.out.data());
  }
  state.SetItemsProcessed(state.iterations() * s.matrix.coefficients().size());
}

void BM_ApplyOpenMP(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    apply(s.matrix, s.u.values(), s.out);
    benchmark::DoNotOptimize(s.out.data());
  }
  state.SetItemsProcessed(state.iterations() * s.matrix.coefficients().size());
}

void BM_Step(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const std::vector<double> f(s.grid.interior_size(), 0.0);
  Field next(s.grid);
  std::vector<double> scratch(s.grid.interior_size());
  const double dt = 0.2 * s.grid.dx() * s.grid.dx();
  for (auto _ : state) {
    step_into(s.u, s.matrix, f, dt, scratch, next);
    benchmark::DoNotOptimize(next.values().data());
  }
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int n : {400, 4096, 65536}) {
    for (int r : {3, 8}) b->Args({n, r});
  }
}

}  // namespace

BENCHMARK(BM_ApplySerial)->Apply(sizes);
BENCHMARK(BM_ApplyOpenMP)->Apply(sizes);
BENCHMARK(BM_Step)->Apply(sizes);

BENCHMARK_MAIN();
