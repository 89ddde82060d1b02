#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qnl/analysis/convergence.hpp"
#include "qnl/analysis/manufactured.hpp"
#include "qnl/kernel.hpp"
#include "qnl/stencil.hpp"

namespace qnl {

struct Diagnostic {
  int line = 0;  // 0 when not tied to a line
  std::string message;
};

std::string format_diagnostics(const std::vector<Diagnostic>& diagnostics);

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<Diagnostic> diagnostics)
      : std::runtime_error(format_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

struct ConfigEntry {
  std::string value;
  int line = 0;
};

/// key -> value from `key = value` lines. Blank lines and `#` comments are
/// skipped; a key may appear once per text.
using ConfigEntries = std::map<std::string, ConfigEntry>;

/// Throws ConfigError on malformed lines or repeated keys.
ConfigEntries parse_entries(std::string_view text);

/// Later entries override earlier ones.
void merge_entries(ConfigEntries& base, const ConfigEntries& overrides);

struct RunConfig {
  int n_half = 0;
  int ratio_r = 0;
  KernelProfile profile = KernelProfile::constant();
  std::string kernel_kind = "constant";
  Scheme scheme{};
  double final_time = 0.0;
  double lambda2 = 0.0;
  int snapshot_stride = 0;
  std::string case_name = "example1";
  /// Data selectors: `case`, `constant:<c>`, `sin:<k>` (sin(k pi x)).
  std::string forcing = "case";
  std::string initial = "case";
  std::string boundary = "case";
  std::string output_dir = "out";
  std::vector<int> meshes{50, 100, 200, 400};
  ErrorNorm norm = ErrorNorm::Interior;

  [[nodiscard]] double dx() const { return 1.0 / n_half; }
  [[nodiscard]] double delta() const { return ratio_r * dx(); }
};

/// All accepted keys, in documentation order.
const std::vector<std::string>& config_keys();

/// Validates entries (types, unknown keys, required keys, constraints) and
/// throws ConfigError listing every problem found.
RunConfig build_config(const ConfigEntries& entries);

/// parse_entries + build_config.
RunConfig parse_config(std::string_view text);

/// Forcing, initial and boundary data resolved from the case name and the
/// data selectors, plus the exact solution when the case provides one.
ManufacturedCase resolve_data(const RunConfig& config);

}  // namespace qnl
