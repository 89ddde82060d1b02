#include "qnl/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnl {
namespace {

struct BranchFactors {
  double nonlocal = 1.0;
  double sums = 1.0;
  double local_terms = 1.0;
};

BranchFactors original_factors(OriginalNormalization n) {
  switch (n) {
    case OriginalNormalization::AsPrinted: return {2.0, 1.0, 2.0};
    case OriginalNormalization::Halved: return {1.0, 1.0, 1.0};
    case OriginalNormalization::NonlocalHalved: return {1.0, 1.0, 2.0};
  }
  return {};
}

/// Dense accumulator for one row, offsets -r..r relative to the row index.
class RowBuilder {
 public:
  explicit RowBuilder(int r) : r_(r), coef_(2 * r + 1, 0.0), touched_(2 * r + 1, false) {}

  void add(int offset, double value) {
    const int k = offset + r_;
    coef_.at(k) += value;
    touched_[k] = true;
  }

  /// Second difference (u_{i+h} - 2u_i + u_{i-h}) with weight w.
  void second_difference(int h, double w) {
    add(h, w);
    add(-h, w);
    add(0, -2.0 * w);
  }

  /// Central difference (u_{i+h} - u_{i-h}) with weight w.
  void central_difference(int h, double w) {
    add(h, w);
    add(-h, -w);
  }

  void emit(const Grid& grid, int i, std::vector<int>& cols, std::vector<double>& coefs) {
    for (int k = 0; k < 2 * r_ + 1; ++k) {
      if (!touched_[k]) continue;
      cols.push_back(grid.storage(i + k - r_));
      coefs.push_back(coef_[k]);
      coef_[k] = 0.0;
      touched_[k] = false;
    }
  }

 private:
  int r_;
  std::vector<double> coef_;
  std::vector<bool> touched_;
};

void nonlocal_row(RowBuilder& row, const MomentTable& mt, double scale) {
  const double dx = mt.dx();
  for (int j = 1; j <= mt.ratio_r(); ++j) {
    row.second_difference(j, scale * mt.partial(j, 2) / ((j * dx) * (j * dx)));
  }
}

void local_row(RowBuilder& row, double dx) { row.second_difference(1, 1.0 / (dx * dx)); }

/// The two local-type terms shared by every transitional form:
///   tail1(x) (u_{i+1} - u_i)/dx + (prefix2(x) + x tail1(x)) (u_{i+1} - 2u_i + u_{i-1})/dx^2.
void transitional_local_terms(RowBuilder& row, const MomentTable& mt, int m, double scale) {
  const double dx = mt.dx();
  const double x = m * dx;
  const double tail = mt.tail1(m);
  const double first = scale * tail / dx;
  row.add(1, first);
  row.add(0, -first);
  row.second_difference(1, scale * (mt.prefix2(m) + x * tail) / (dx * dx));
}

void new_transitional_row(RowBuilder& row, const MomentTable& mt, int m, SchemeVariant variant) {
  const double dx = mt.dx();
  for (int j = m + 1; j <= mt.ratio_r(); ++j) {
    const int h = j - 1;
    const double hdx = h * dx;
    double second = 0.0;
    double first = 0.0;
    switch (variant) {
      case SchemeVariant::NewStabilityForm:
        second = mt.partial(j, 2) / (2.0 * hdx * hdx);
        first = mt.partial(j, 1) / (2.0 * hdx);
        break;
      case SchemeVariant::NewAsPrinted:
        second = mt.partial(j, 1) / (2.0 * hdx);
        first = mt.partial(j, 1) / (2.0 * hdx);
        break;
      case SchemeVariant::NewFullWeight:
        second = mt.partial(j, 2) / (hdx * hdx);
        first = mt.partial(j, 1) / hdx;
        break;
      case SchemeVariant::Original: break;
    }
    row.second_difference(h, second);
    row.central_difference(h, -first);
  }
  transitional_local_terms(row, mt, m, 1.0);
}

void original_transitional_row(RowBuilder& row, const MomentTable& mt, int m,
                               const BranchFactors& f) {
  const double dx = mt.dx();
  for (int j = m; j <= mt.ratio_r(); ++j) {
    const double jdx = j * dx;
    row.second_difference(j, f.sums * mt.partial(j, 2) / (jdx * jdx));
    row.central_difference(j, -f.sums * mt.partial(j, 1) / jdx);
  }
  transitional_local_terms(row, mt, m, f.local_terms);
}

}  // namespace

std::string to_string(const Scheme& scheme) {
  switch (scheme.variant) {
    case SchemeVariant::NewStabilityForm: return "new-stability";
    case SchemeVariant::NewAsPrinted: return "new-as-printed";
    case SchemeVariant::NewFullWeight: return "new-full-weight";
    case SchemeVariant::Original:
      switch (scheme.normalization) {
        case OriginalNormalization::AsPrinted: return "original";
        case OriginalNormalization::Halved: return "original-halved";
        case OriginalNormalization::NonlocalHalved: return "original-nonlocal-halved";
      }
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "new-stability") return {SchemeVariant::NewStabilityForm};
  if (name == "new-as-printed") return {SchemeVariant::NewAsPrinted};
  if (name == "new-full-weight") return {SchemeVariant::NewFullWeight};
  if (name == "original") return {SchemeVariant::Original, OriginalNormalization::AsPrinted};
  if (name == "original-halved") return {SchemeVariant::Original, OriginalNormalization::Halved};
  if (name == "original-nonlocal-halved") {
    return {SchemeVariant::Original, OriginalNormalization::NonlocalHalved};
  }
  throw std::invalid_argument("unknown scheme variant '" + std::string(name) + "'");
}

Field::Field(const Grid& grid, double fill)
    : first_(grid.first_index()), values_(static_cast<std::size_t>(grid.size()), fill) {}

StencilMatrix::StencilMatrix(Grid grid, Scheme scheme, std::vector<int> row_start,
                             std::vector<int> columns, std::vector<double> coefficients)
    : grid_(grid),
      scheme_(scheme),
      row_start_(std::move(row_start)),
      columns_(std::move(columns)),
      coefficients_(std::move(coefficients)) {
  if (static_cast<int>(row_start_.size()) != grid_.interior_size() + 1) {
    throw std::invalid_argument("StencilMatrix: row_start size does not match the grid");
  }
}

std::vector<StencilEntry> StencilMatrix::row(int i) const {
  if (!grid_.is_interior(i)) {
    throw std::out_of_range("StencilMatrix::row: index " + std::to_string(i) +
                            " is not an interior row");
  }
  std::vector<StencilEntry> out;
  for (int k = row_start_[i - 1]; k < row_start_[i]; ++k) {
    out.push_back({grid_.index_of_storage(columns_[k]), coefficients_[k]});
  }
  return out;
}

double StencilMatrix::coefficient(int i, int column) const {
  for (const auto& e : row(i)) {
    if (e.column == column) return e.coefficient;
  }
  return 0.0;
}

StencilMatrix assemble(const Grid& grid, const Kernel& kernel, const Scheme& scheme) {
  if (std::abs(kernel.delta() - grid.delta()) > 1e-12 * grid.delta()) {
    throw std::invalid_argument("assemble: kernel horizon does not equal ratio_r * dx");
  }
  if (!validate(kernel).ok()) {
    throw std::invalid_argument("assemble: kernel failed validation");
  }
  if (scheme.variant == SchemeVariant::Original && 2 * grid.ratio_r() > grid.n_half()) {
    throw std::invalid_argument("assemble: the original scheme needs 2*ratio_r <= n_half");
  }
  const MomentTable mt(kernel, grid.ratio_r());
  const int n = grid.n_half();
  const int r = grid.ratio_r();
  const double dx = grid.dx();
  const BranchFactors original = original_factors(scheme.normalization);
  const bool is_original = scheme.variant == SchemeVariant::Original;

  std::vector<int> row_start{0};
  std::vector<int> cols;
  std::vector<double> coefs;
  cols.reserve(static_cast<std::size_t>(grid.interior_size()) * 3 + 4 * n * r);
  coefs.reserve(cols.capacity());
  RowBuilder row(r);

  for (int i = 1; i <= 2 * n - 1; ++i) {
    switch (grid.classify(i)) {
      case Region::Nonlocal:
        nonlocal_row(row, mt, is_original ? original.nonlocal : 1.0);
        break;
      case Region::Transitional:
        if (is_original) {
          original_transitional_row(row, mt, i - n, original);
        } else {
          new_transitional_row(row, mt, i - n, scheme.variant);
        }
        break;
      case Region::Local:
        local_row(row, dx);
        break;
      default:
        throw std::logic_error("assemble: boundary node in interior range");
    }
    row.emit(grid, i, cols, coefs);
    row_start.push_back(static_cast<int>(cols.size()));
  }
  return StencilMatrix(grid, scheme, std::move(row_start), std::move(cols), std::move(coefs));
}

void apply(const StencilMatrix& matrix, std::span<const double> u, std::span<double> out) {
  const int rows = matrix.rows();
  if (static_cast<int>(u.size()) != matrix.grid().size() || static_cast<int>(out.size()) != rows) {
    throw std::invalid_argument("apply: field length does not match the grid");
  }
  const int* start = matrix.row_start().data();
  const int* col = matrix.columns().data();
  const double* coef = matrix.coefficients().data();
  const double* in = u.data();
  double* dst = out.data();
#pragma omp parallel for schedule(static) if (rows >= kParallelRows)
  for (int k = 0; k < rows; ++k) {
    double s = 0.0;
    for (int e = start[k]; e < start[k + 1]; ++e) s += coef[e] * in[col[e]];
    dst[k] = s;
  }
}

std::vector<double> apply(const StencilMatrix& matrix, const Field& field) {
  std::vector<double> out(static_cast<std::size_t>(matrix.rows()));
  apply(matrix, field.values(), out);
  return out;
}

namespace reference {

void apply(const StencilMatrix& matrix, std::span<const double> u, std::span<double> out) {
  if (static_cast<int>(u.size()) != matrix.grid().size() ||
      static_cast<int>(out.size()) != matrix.rows()) {
    throw std::invalid_argument("reference::apply: field length does not match the grid");
  }
  const auto start = matrix.row_start();
  const auto col = matrix.columns();
  const auto coef = matrix.coefficients();
  for (int k = 0; k < matrix.rows(); ++k) {
    double s = 0.0;
    for (int e = start[k]; e < start[k + 1]; ++e) s += coef[e] * u[col[e]];
    out[k] = s;
  }
}

}  // namespace reference
}  // namespace qnl
