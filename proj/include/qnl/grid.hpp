#pragma once

#include <string_view>

namespace qnl {

enum class Region { NonlocalBoundary, Nonlocal, Transitional, Local, LocalBoundary };

std::string_view to_string(Region region);

/// Uniform mesh over [-1 - delta, 1] with dx = 1/N and delta = r dx.
///
/// Node indices run from -(r-1) to 2N with x_i = -1 + i dx, so x_0 = -1,
/// x_N = 0 (the interface) and x_{2N} = 1. Storage offsets (0-based, used by
/// fields and stencils) are i + r - 1.
class Grid {
 public:
  /// Requires 2r - 1 <= N so the new scheme's transitional stencils (reach
  /// r - 1 past x = delta) stay inside the index range. The original scheme
  /// reaches r past x = delta and needs 2r <= N; assemble() checks that.
  Grid(int n_half, int ratio_r);

  [[nodiscard]] int n_half() const { return n_; }
  [[nodiscard]] int ratio_r() const { return r_; }
  [[nodiscard]] double dx() const { return dx_; }
  [[nodiscard]] double delta() const { return r_ * dx_; }

  [[nodiscard]] int first_index() const { return -(r_ - 1); }
  [[nodiscard]] int last_index() const { return 2 * n_; }
  [[nodiscard]] int interface_index() const { return n_; }
  [[nodiscard]] int size() const { return 2 * n_ + r_; }
  /// Interior rows are i = 1 .. 2N-1.
  [[nodiscard]] int interior_size() const { return 2 * n_ - 1; }

  [[nodiscard]] bool contains(int i) const { return i >= first_index() && i <= last_index(); }
  [[nodiscard]] bool is_interior(int i) const { return i >= 1 && i <= 2 * n_ - 1; }
  [[nodiscard]] bool is_boundary(int i) const { return contains(i) && !is_interior(i); }

  [[nodiscard]] double x(int i) const;
  [[nodiscard]] int storage(int i) const { return i + r_ - 1; }
  [[nodiscard]] int index_of_storage(int k) const { return k - (r_ - 1); }

  /// Throws std::out_of_range for indices outside the grid.
  [[nodiscard]] Region classify(int i) const;

 private:
  int n_;
  int r_;
  double dx_;
};

Grid build_grid(int n_half, int ratio_r);

}  // namespace qnl
