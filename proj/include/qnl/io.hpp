#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"
#include "qnl/config.hpp"

namespace qnl {

inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest round-trip-safe decimal (17 significant digits).
std::string format_real(double v);

/// Writes a CSV file: header line, then rows of reals.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Writes rows whose leading columns are text.
void write_csv_text(const std::filesystem::path& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows);

/// `u_t<time>.csv` with time printed at up to 10 significant digits.
std::string snapshot_file_name(double t);

/// Meta record common to every output: tool version, grid, kernel, scheme, lambda2.
nlohmann::json meta_record(const RunConfig& config);

void write_json(const std::filesystem::path& path, const nlohmann::json& value);

}  // namespace qnl
