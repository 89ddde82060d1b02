#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnl/grid.hpp"
#include "qnl/kernel.hpp"

namespace qnl {

/// Discretizations of the coupled operator.
///
/// NewStabilityForm weights the first transitional sum by the second partial
/// moment over 2((j-1)dx)^2; NewAsPrinted weights it by the first partial
/// moment over 2(j-1)dx. NewFullWeight drops the 1/2 on both transitional
/// sums.
/// Original is the earlier j-indexed scheme, with a normalization flag for
/// its leading factors of 2.
enum class SchemeVariant { NewStabilityForm, NewAsPrinted, NewFullWeight, Original };

/// Only meaningful for SchemeVariant::Original.
///   AsPrinted:      nonlocal x2, transitional sums x1, local-type terms x2
///   Halved:         nonlocal x1, transitional sums x1, local-type terms x1
///   NonlocalHalved: nonlocal x1, transitional sums x1, local-type terms x2
enum class OriginalNormalization { AsPrinted, Halved, NonlocalHalved };

struct Scheme {
  SchemeVariant variant = SchemeVariant::NewStabilityForm;
  OriginalNormalization normalization = OriginalNormalization::AsPrinted;

  friend bool operator==(const Scheme&, const Scheme&) = default;
};

/// Config/CLI names: new-stability, new-as-printed, new-full-weight,
/// original, original-halved, original-nonlocal-halved.
std::string to_string(const Scheme& scheme);
Scheme parse_scheme(std::string_view name);

/// Values over every grid node, addressed by grid index.
class Field {
 public:
  explicit Field(const Grid& grid, double fill = 0.0);

  [[nodiscard]] double& operator[](int i) { return values_[i - first_]; }
  [[nodiscard]] double operator[](int i) const { return values_[i - first_]; }

  [[nodiscard]] int first_index() const { return first_; }
  [[nodiscard]] int last_index() const { return first_ + static_cast<int>(values_.size()) - 1; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }

  [[nodiscard]] std::span<double> values() { return values_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }

 private:
  int first_;
  std::vector<double> values_;
};

struct StencilEntry {
  int column;          // grid index
  double coefficient;  // 1/length^2
};

/// Sparse rows of a discrete coupled operator over the interior rows
/// i = 1 .. 2N-1 (CSR, columns as storage offsets, sorted within a row).
/// Boundary rows are not stored.
class StencilMatrix {
 public:
  StencilMatrix(Grid grid, Scheme scheme, std::vector<int> row_start, std::vector<int> columns,
                std::vector<double> coefficients);

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] const Scheme& scheme() const { return scheme_; }
  [[nodiscard]] int rows() const { return grid_.interior_size(); }

  /// Row i (grid index, must be interior), columns as grid indices, sorted.
  [[nodiscard]] std::vector<StencilEntry> row(int i) const;
  [[nodiscard]] double coefficient(int i, int column) const;

  [[nodiscard]] std::span<const int> row_start() const { return row_start_; }
  [[nodiscard]] std::span<const int> columns() const { return columns_; }
  [[nodiscard]] std::span<const double> coefficients() const { return coefficients_; }

 private:
  Grid grid_;
  Scheme scheme_;
  std::vector<int> row_start_;
  std::vector<int> columns_;
  std::vector<double> coefficients_;
};

/// Throws std::invalid_argument if the kernel fails validation or its
/// horizon differs from grid.delta().
StencilMatrix assemble(const Grid& grid, const Kernel& kernel, const Scheme& scheme);

/// Rows with at least this many entries are evaluated with OpenMP.
inline constexpr int kParallelRows = 4096;

/// out[k] = (L u)_{k+1} for the interior rows. u spans all grid nodes
/// (storage order); out has interior_size() entries.
void apply(const StencilMatrix& matrix, std::span<const double> u, std::span<double> out);

/// Interior values (L u)_i, i = 1 .. 2N-1.
std::vector<double> apply(const StencilMatrix& matrix, const Field& field);

namespace reference {

/// Straightforward serial evaluation, kept as the oracle for the OpenMP path.
void apply(const StencilMatrix& matrix, std::span<const double> u, std::span<double> out);

}  // namespace reference

}  // namespace qnl
