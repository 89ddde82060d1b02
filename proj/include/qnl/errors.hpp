#pragma once

#include <stdexcept>
#include <string>

namespace qnl {

/// Raised when a numerical guard trips (unstable time step, non-finite state).
/// The CLI maps it to exit status 2.
class NumericalGuardError : public std::runtime_error {
 public:
  explicit NumericalGuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qnl
