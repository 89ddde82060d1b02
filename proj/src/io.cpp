#include "qnl/io.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <fstream>
#include <stdexcept>

namespace qnl {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

template <class Row, class Fmt>
void write_rows(const std::filesystem::path& path, const std::vector<std::string>& header,
                const std::vector<Row>& rows, Fmt fmt_cell) {
  std::ofstream out = open_output(path);
  out << fmt::format("{}\n", fmt::join(header, ","));
  std::string line;
  for (const auto& row : rows) {
    line.clear();
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) line += ',';
      line += fmt_cell(row[k]);
    }
    line += '\n';
    out << line;
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  write_rows(path, header, rows, [](double v) { return format_real(v); });
}

void write_csv_text(const std::filesystem::path& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
  write_rows(path, header, rows, [](const std::string& v) { return v; });
}

std::string snapshot_file_name(double t) { return fmt::format("u_t{:.10g}.csv", t); }

nlohmann::json meta_record(const RunConfig& config) {
  return {
      {"tool_version", kToolVersion},
      {"grid", {{"n_half", config.n_half}, {"ratio_r", config.ratio_r}, {"dx", config.dx()},
                {"delta", config.delta()}}},
      {"kernel", {{"kind", config.kernel_kind}, {"profile", config.profile.describe()}}},
      {"scheme", to_string(config.scheme)},
      {"lambda2", config.lambda2},
      {"final_time", config.final_time},
      {"case", config.case_name},
      {"data", {{"forcing", config.forcing}, {"initial", config.initial},
                {"boundary", config.boundary}}},
  };
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) {
  std::ofstream out = open_output(path);
  out << value.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace qnl
