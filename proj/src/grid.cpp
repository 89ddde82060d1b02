#include "qnl/grid.hpp"

#include <stdexcept>
#include <string>

namespace qnl {

std::string_view to_string(Region region) {
  switch (region) {
    case Region::NonlocalBoundary: return "nonlocal-boundary";
    case Region::Nonlocal: return "nonlocal";
    case Region::Transitional: return "transitional";
    case Region::Local: return "local";
    case Region::LocalBoundary: return "local-boundary";
  }
  return "unknown";
}

Grid::Grid(int n_half, int ratio_r) : n_(n_half), r_(ratio_r), dx_(0.0) {
  if (n_half < 2) throw std::invalid_argument("grid.n_half must be at least 2");
  if (ratio_r < 1) throw std::invalid_argument("grid.ratio_r must be a positive integer");
  if (2 * ratio_r - 1 > n_half) {
    throw std::invalid_argument("grid requires 2*ratio_r - 1 <= n_half (got r=" +
                                std::to_string(ratio_r) + ", N=" + std::to_string(n_half) + ")");
  }
  dx_ = 1.0 / n_half;
}

double Grid::x(int i) const {
  // (i - N) / N is exact at the interface and at x = 1.
  return static_cast<double>(i - n_) / static_cast<double>(n_);
}

Region Grid::classify(int i) const {
  if (!contains(i)) {
    throw std::out_of_range("grid index " + std::to_string(i) + " outside [" +
                            std::to_string(first_index()) + ", " + std::to_string(last_index()) +
                            "]");
  }
  if (i <= 0) return Region::NonlocalBoundary;
  if (i <= n_) return Region::Nonlocal;
  if (i <= n_ + r_) return Region::Transitional;
  if (i < 2 * n_) return Region::Local;
  return Region::LocalBoundary;
}

Grid build_grid(int n_half, int ratio_r) { return Grid(n_half, ratio_r); }

}  // namespace qnl
