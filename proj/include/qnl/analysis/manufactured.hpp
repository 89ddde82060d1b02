#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qnl/stepper.hpp"

namespace qnl {

/// Forcing, exact local solution, initial data and boundary data of a
/// manufactured test problem on [-1, 1].
struct ManufacturedCase {
  std::string name;
  SpaceTimeFunction forcing;
  SpaceTimeFunction exact;
  SpaceTimeFunction initial;
  SpaceTimeFunction boundary;
};

/// Known names: example1, example2, zero. Throws std::invalid_argument otherwise.
ManufacturedCase manufactured_case(std::string_view name);

std::vector<std::string> manufactured_case_names();

}  // namespace qnl
