#include "qnl/analysis/manufactured.hpp"

#include <cmath>
#include <stdexcept>

namespace qnl {
namespace {

// u = (1 - x^2) - e^{-t}(x^6 - 1)
ManufacturedCase example1() {
  ManufacturedCase c;
  c.name = "example1";
  c.exact = [](std::span<const double> x, double t, std::span<double> out) {
    const double e = std::exp(-t);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double x2 = x[k] * x[k];
      out[k] = (1.0 - x2) - e * (x2 * x2 * x2 - 1.0);
    }
  };
  c.forcing = [](std::span<const double> x, double t, std::span<double> out) {
    const double e = std::exp(-t);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double x2 = x[k] * x[k];
      out[k] = 30.0 * x2 * x2 * e + e * (x2 * x2 * x2 - 1.0) + 2.0;
    }
  };
  c.initial = [exact = c.exact](std::span<const double> x, double, std::span<double> out) {
    exact(x, 0.0, out);
  };
  c.boundary = constant_function(0.0);
  return c;
}

// u = e^{-t} (1 - x)^2 (1 + x)^2 x^2 = e^{-t} (x - x^3)^2
ManufacturedCase example2() {
  ManufacturedCase c;
  c.name = "example2";
  c.exact = [](std::span<const double> x, double t, std::span<double> out) {
    const double e = std::exp(-t);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double p = x[k] - x[k] * x[k] * x[k];
      out[k] = e * p * p;
    }
  };
  c.forcing = [](std::span<const double> x, double t, std::span<double> out) {
    const double e = std::exp(-t);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double x2 = x[k] * x[k];
      const double p = x[k] - x[k] * x2;
      out[k] = -e * (p * p + (2.0 - 24.0 * x2 + 30.0 * x2 * x2));
    }
  };
  c.initial = [exact = c.exact](std::span<const double> x, double, std::span<double> out) {
    exact(x, 0.0, out);
  };
  c.boundary = constant_function(0.0);
  return c;
}

ManufacturedCase zero() {
  return {"zero", constant_function(0.0), constant_function(0.0), constant_function(0.0),
          constant_function(0.0)};
}

}  // namespace

ManufacturedCase manufactured_case(std::string_view name) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  if (name == "zero") return zero();
  throw std::invalid_argument("unknown manufactured case '" + std::string(name) + "'");
}

std::vector<std::string> manufactured_case_names() { return {"example1", "example2", "zero"}; }

}  // namespace qnl
