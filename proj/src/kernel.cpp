#include "qnl/kernel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qnl/quadrature.hpp"

namespace qnl {
namespace {

constexpr double kRangeSlack = 1e-14;
constexpr double kSampleStep = 1e-3;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

double to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("kernel.pieces: not a number: '" + std::string(s) + "'");
  }
  return v;
}

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("kernel horizon delta must be positive and finite");
  }
}

bool within_horizon(double b, double delta) {
  return b <= delta + kRangeSlack + 1e-12 * delta;
}

}  // namespace

double ProfilePiece::eval(double rho) const {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * rho + *it;
  return v;
}

KernelProfile KernelProfile::constant(double value) {
  KernelProfile p;
  p.kind_ = Kind::Constant;
  p.constant_ = value;
  return p;
}

KernelProfile KernelProfile::pieces(std::vector<ProfilePiece> pieces) {
  if (pieces.empty()) throw std::invalid_argument("kernel profile needs at least one piece");
  double expected = 0.0;
  for (const auto& piece : pieces) {
    if (std::abs(piece.lo - expected) > 1e-14 || !(piece.hi > piece.lo)) {
      throw std::invalid_argument("kernel pieces must tile [0, 1] in ascending order");
    }
    if (piece.coeffs.empty()) throw std::invalid_argument("kernel piece has no coefficients");
    expected = piece.hi;
  }
  if (std::abs(expected - 1.0) > 1e-14) {
    throw std::invalid_argument("kernel pieces must end at rho = 1");
  }
  KernelProfile p;
  p.kind_ = Kind::TabulatedPolynomialPieces;
  p.pieces_ = std::move(pieces);
  return p;
}

KernelProfile KernelProfile::parse_pieces(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw std::invalid_argument("kernel.pieces: unbalanced brackets");
    text = trim(text.substr(1, text.size() - 2));
  }
  std::vector<ProfilePiece> pieces;
  for (std::string_view chunk : split(text, ';')) {
    if (chunk.empty()) continue;
    const auto colon = chunk.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("kernel.pieces: expected 'lo,hi:c0,c1,...'");
    }
    const auto bounds = split(chunk.substr(0, colon), ',');
    if (bounds.size() != 2) throw std::invalid_argument("kernel.pieces: expected two bounds");
    ProfilePiece piece;
    piece.lo = to_double(bounds[0]);
    piece.hi = to_double(bounds[1]);
    for (auto c : split(chunk.substr(colon + 1), ',')) piece.coeffs.push_back(to_double(c));
    pieces.push_back(std::move(piece));
  }
  return KernelProfile::pieces(std::move(pieces));
}

double KernelProfile::operator()(double rho) const {
  if (rho < 0.0 || rho > 1.0) return 0.0;
  if (kind_ == Kind::Constant) return constant_;
  for (const auto& piece : pieces_) {
    if (rho <= piece.hi) return piece.eval(rho);
  }
  return pieces_.back().eval(rho);
}

std::vector<double> KernelProfile::breakpoints() const {
  if (kind_ == Kind::Constant) return {0.0, 1.0};
  std::vector<double> out{0.0};
  for (const auto& piece : pieces_) out.push_back(piece.hi);
  return out;
}

std::string KernelProfile::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind_ == Kind::Constant) {
    os << "constant(" << constant_ << ")";
    return os.str();
  }
  os << "pieces[";
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    if (k) os << ';';
    os << pieces_[k].lo << ',' << pieces_[k].hi << ':';
    for (std::size_t c = 0; c < pieces_[k].coeffs.size(); ++c) {
      if (c) os << ',';
      os << pieces_[k].coeffs[c];
    }
  }
  os << ']';
  return os.str();
}

Kernel::Kernel(double delta, KernelProfile profile) : delta_(delta), profile_(std::move(profile)) {
  check_delta(delta);
}

double Kernel::operator()(double s) const {
  const double a = std::abs(s);
  if (a > delta_) return 0.0;
  return profile_(a / delta_) / (delta_ * delta_ * delta_);
}

double Kernel::moment(double a, double b, int p) const {
  if (p < 0) throw std::invalid_argument("moment order must be nonnegative");
  if (a < 0.0 || b < a) throw std::out_of_range("moment interval must satisfy 0 <= a <= b");
  b = std::min(b, delta_);
  a = std::min(a, b);
  if (a == b) return 0.0;
  if (profile_.kind() == KernelProfile::Kind::Constant) {
    const double scale = profile_.constant_value() / (delta_ * delta_ * delta_);
    return scale * (std::pow(b, p + 1) - std::pow(a, p + 1)) / (p + 1);
  }
  // Work in rho = s / delta: int s^p gamma_delta ds = delta^(p-2) int rho^p gamma(rho) drho.
  const double lo = a / delta_;
  const double hi = b / delta_;
  double total = 0.0;
  const auto cuts = profile_.breakpoints();
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double pa = std::max(lo, cuts[k]);
    const double pb = std::min(hi, cuts[k + 1]);
    if (pb <= pa) continue;
    const ProfilePiece& piece = profile_.piece_list()[k];
    total += quadrature::integrate(
        [&piece, p](double rho) { return std::pow(rho, p) * piece.eval(rho); }, pa, pb);
  }
  return std::pow(delta_, p - 2) * total;
}

Kernel constant_kernel(double delta) { return Kernel(delta, KernelProfile::constant(3.0)); }

double partial_moment(const Kernel& kernel, int j, double dx, int p) {
  if (j < 1) throw std::out_of_range("partial_moment: j must be >= 1");
  if (!(dx > 0.0)) throw std::invalid_argument("partial_moment: dx must be positive");
  const double b = j * dx;
  if (!within_horizon(b, kernel.delta())) {
    throw std::out_of_range("partial_moment: j*dx exceeds the horizon");
  }
  return kernel.moment((j - 1) * dx, b, p);
}

double tail_moment(const Kernel& kernel, double a, int p) {
  if (a < 0.0 || !within_horizon(a, kernel.delta())) {
    throw std::out_of_range("tail_moment: a must lie in [0, delta]");
  }
  return kernel.moment(std::min(a, kernel.delta()), kernel.delta(), p);
}

double prefix_moment(const Kernel& kernel, double a, int p) {
  if (a < 0.0 || !within_horizon(a, kernel.delta())) {
    throw std::out_of_range("prefix_moment: a must lie in [0, delta]");
  }
  return kernel.moment(0.0, std::min(a, kernel.delta()), p);
}

KernelValidation validate(const Kernel& kernel) {
  KernelValidation v;
  const auto& profile = kernel.profile();
  const int samples = static_cast<int>(std::lround(1.0 / kSampleStep));

  double most_negative = 0.0;
  double largest_increase = 0.0;
  // Open interval (0, 1) for monotonicity; endpoints are included for sign.
  double prev = profile(0.0);
  most_negative = std::min(most_negative, prev);
  for (int k = 1; k <= samples; ++k) {
    const double rho = k == samples ? 1.0 : k * kSampleStep;
    const double value = profile(rho);
    most_negative = std::min(most_negative, value);
    if (k > 1 && k < samples) largest_increase = std::max(largest_increase, value - prev);
    prev = value;
  }
  v.nonnegative = {most_negative >= 0.0, -most_negative};
  v.nonincreasing = {largest_increase <= 0.0, largest_increase};

  const double second = kernel.moment(0.0, kernel.delta(), 2);
  const double tol = profile.kind() == KernelProfile::Kind::Constant ? 1e-12 : 1e-10;
  const double residual = std::abs(second - 1.0);
  v.normalized = {residual <= tol, residual};
  return v;
}

MomentTable::MomentTable(const Kernel& kernel, int ratio_r)
    : r_(ratio_r), dx_(0.0), delta_(kernel.delta()) {
  if (ratio_r < 1) throw std::invalid_argument("ratio_r must be a positive integer");
  dx_ = delta_ / r_;
  partial1_.resize(r_ + 1, 0.0);
  partial2_.resize(r_ + 1, 0.0);
  for (int j = 1; j <= r_; ++j) {
    partial1_[j] = partial_moment(kernel, j, dx_, 1);
    partial2_[j] = partial_moment(kernel, j, dx_, 2);
  }
  tail1_.resize(r_ + 1);
  prefix2_.resize(r_ + 1);
  for (int m = 0; m <= r_; ++m) {
    const double a = m == r_ ? delta_ : m * dx_;
    tail1_[m] = tail_moment(kernel, a, 1);
    prefix2_[m] = prefix_moment(kernel, a, 2);
  }
}

double MomentTable::partial(int j, int p) const {
  if (j < 1 || j > r_) throw std::out_of_range("MomentTable::partial: j outside [1, r]");
  if (p == 1) return partial1_[j];
  if (p == 2) return partial2_[j];
  throw std::invalid_argument("MomentTable::partial: p must be 1 or 2");
}

}  // namespace qnl
