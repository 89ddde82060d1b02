#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qnl {

/// One polynomial piece of a reference profile gamma(rho), rho in [lo, hi].
/// coeffs are ascending powers of rho.
struct ProfilePiece {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> coeffs;

  [[nodiscard]] double eval(double rho) const;
};

/// Reference profile gamma on [0, 1]; the rescaled kernel is
/// gamma_delta(s) = gamma(|s| / delta) / delta^3.
class KernelProfile {
 public:
  enum class Kind { Constant, TabulatedPolynomialPieces };

  /// gamma(rho) = value on [0, 1]. value = 3 is the normalized constant kernel.
  static KernelProfile constant(double value = 3.0);
  /// Pieces must tile [0, 1] in ascending order without gaps.
  static KernelProfile pieces(std::vector<ProfilePiece> pieces);
  /// Parses the `kernel.pieces` text form: `lo,hi:c0,c1,...;lo,hi:...`,
  /// optionally wrapped in square brackets.
  static KernelProfile parse_pieces(std::string_view text);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double constant_value() const { return constant_; }
  [[nodiscard]] const std::vector<ProfilePiece>& piece_list() const { return pieces_; }

  /// gamma(rho); zero outside [0, 1].
  [[nodiscard]] double operator()(double rho) const;

  /// Breakpoints of the piecewise definition, including 0 and 1.
  [[nodiscard]] std::vector<double> breakpoints() const;

  [[nodiscard]] std::string describe() const;

 private:
  Kind kind_ = Kind::Constant;
  double constant_ = 3.0;
  std::vector<ProfilePiece> pieces_;
};

/// Nonlocal kernel gamma_delta with horizon delta. Immutable.
class Kernel {
 public:
  Kernel(double delta, KernelProfile profile);

  [[nodiscard]] double delta() const { return delta_; }
  [[nodiscard]] const KernelProfile& profile() const { return profile_; }

  /// gamma_delta(s) for s in [-delta, delta]; zero outside.
  [[nodiscard]] double operator()(double s) const;

  /// Integral of s^p gamma_delta(s) over [a, b], 0 <= a <= b <= delta.
  /// Closed form for the constant profile, adaptive Gauss-Legendre otherwise.
  [[nodiscard]] double moment(double a, double b, int p) const;

 private:
  double delta_;
  KernelProfile profile_;
};

/// Kernel with gamma_delta(s) = 3 / delta^3 on [0, delta].
Kernel constant_kernel(double delta);

/// Integral of s^p gamma_delta over [(j-1) dx, j dx].
double partial_moment(const Kernel& kernel, int j, double dx, int p);

/// Integral of s^p gamma_delta over [a, delta].
double tail_moment(const Kernel& kernel, double a, int p);

/// Integral of s^p gamma_delta over [0, a].
double prefix_moment(const Kernel& kernel, double a, int p);

struct CheckResult {
  bool passed = false;
  double residual = 0.0;
};

struct KernelValidation {
  CheckResult nonnegative;   // residual = most negative sampled value (as a magnitude)
  CheckResult nonincreasing; // residual = largest sampled increase
  CheckResult normalized;    // residual = |half-line second moment - 1|

  [[nodiscard]] bool ok() const {
    return nonnegative.passed && nonincreasing.passed && normalized.passed;
  }
};

/// Samples gamma at resolution 1e-3 on [0, 1] for sign and monotonicity and
/// checks the half-line normalization (1e-12 constant, 1e-10 quadrature).
KernelValidation validate(const Kernel& kernel);

/// Moments of a kernel bound to a grid spacing dx = delta / r, precomputed
/// once. Index conventions: partial(j, p) for j in [1, r]; tail1(m) and
/// prefix2(m) at a = m dx for m in [0, r].
class MomentTable {
 public:
  MomentTable(const Kernel& kernel, int ratio_r);

  [[nodiscard]] int ratio_r() const { return r_; }
  [[nodiscard]] double dx() const { return dx_; }
  [[nodiscard]] double delta() const { return delta_; }

  [[nodiscard]] double partial(int j, int p) const;
  [[nodiscard]] double tail1(int m) const { return tail1_.at(m); }
  [[nodiscard]] double prefix2(int m) const { return prefix2_.at(m); }

 private:
  int r_;
  double dx_;
  double delta_;
  std::vector<double> partial1_;
  std::vector<double> partial2_;
  std::vector<double> tail1_;
  std::vector<double> prefix2_;
};

}  // namespace qnl
