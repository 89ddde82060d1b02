#include "qnl/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qnl {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<long long> to_int(const std::string& s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) return std::nullopt;
  return v;
}

std::optional<double> to_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t used = 0;
  try {
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

bool valid_selector(const std::string& s) {
  if (s == "case") return true;
  for (std::string_view prefix : {"constant:", "sin:"}) {
    if (s.rfind(prefix, 0) == 0) return to_double(s.substr(prefix.size())).has_value();
  }
  return false;
}

SpaceTimeFunction select(const std::string& selector, const SpaceTimeFunction& from_case) {
  if (selector == "case") return from_case;
  if (selector.rfind("constant:", 0) == 0) return constant_function(*to_double(selector.substr(9)));
  const double k = *to_double(selector.substr(4));
  return pointwise([k](double x, double) { return std::sin(k * std::numbers::pi * x); });
}

}  // namespace

std::string format_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::ostringstream out;
  for (std::size_t k = 0; k < diagnostics.size(); ++k) {
    if (k) out << '\n';
    if (diagnostics[k].line > 0) out << "line " << diagnostics[k].line << ": ";
    out << diagnostics[k].message;
  }
  return out.str();
}

ConfigEntries parse_entries(std::string_view text) {
  ConfigEntries entries;
  std::vector<Diagnostic> diags;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      diags.push_back({line_no, "expected 'key = value', got '" + line + "'"});
      continue;
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) {
      diags.push_back({line_no, "missing key before '='"});
      continue;
    }
    if (auto it = entries.find(key); it != entries.end()) {
      diags.push_back({line_no, "duplicate key '" + key + "' (first set on line " +
                                    std::to_string(it->second.line) + ")"});
      continue;
    }
    entries[key] = {value, line_no};
  }
  if (!diags.empty()) throw ConfigError(std::move(diags));
  return entries;
}

void merge_entries(ConfigEntries& base, const ConfigEntries& overrides) {
  for (const auto& [k, v] : overrides) base[k] = v;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "grid.n_half",    "grid.ratio_r",         "kernel.kind",  "kernel.pieces",
      "scheme.variant", "time.T",               "time.lambda2", "time.snapshot_stride",
      "case.name",      "data.forcing",         "data.initial", "data.boundary",
      "output.dir",     "converge.meshes",      "converge.norm"};
  return keys;
}

RunConfig build_config(const ConfigEntries& entries) {
  std::vector<Diagnostic> diags;
  RunConfig cfg;
  const auto& keys = config_keys();
  for (const auto& [key, entry] : entries) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      diags.push_back({entry.line, "unknown key '" + key + "'"});
    }
  }
  auto get = [&](const std::string& key) -> const ConfigEntry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto get_int = [&](const std::string& key, int& out, bool required) {
    const ConfigEntry* e = get(key);
    if (!e) {
      if (required) diags.push_back({0, "missing required key '" + key + "'"});
      return false;
    }
    const auto v = to_int(e->value);
    if (!v || *v < INT32_MIN || *v > INT32_MAX) {
      diags.push_back({e->line, key + ": expected an integer, got '" + e->value + "'"});
      return false;
    }
    out = static_cast<int>(*v);
    return true;
  };
  auto get_double = [&](const std::string& key, double& out, bool required) {
    const ConfigEntry* e = get(key);
    if (!e) {
      if (required) diags.push_back({0, "missing required key '" + key + "'"});
      return false;
    }
    const auto v = to_double(e->value);
    if (!v) {
      diags.push_back({e->line, key + ": expected a real number, got '" + e->value + "'"});
      return false;
    }
    out = *v;
    return true;
  };
  auto line_of = [&](const std::string& key) { return get(key) ? get(key)->line : 0; };

  const bool have_n = get_int("grid.n_half", cfg.n_half, true);
  const bool have_r = get_int("grid.ratio_r", cfg.ratio_r, true);
  const bool have_t = get_double("time.T", cfg.final_time, true);
  const bool have_l = get_double("time.lambda2", cfg.lambda2, true);
  get_int("time.snapshot_stride", cfg.snapshot_stride, false);

  if (have_n && cfg.n_half <= 0) diags.push_back({line_of("grid.n_half"), "grid.n_half must be positive"});
  if (have_r && cfg.ratio_r <= 0) diags.push_back({line_of("grid.ratio_r"), "grid.ratio_r must be positive"});
  if (have_t && cfg.final_time <= 0.0) diags.push_back({line_of("time.T"), "time.T must be positive"});
  if (have_l && cfg.lambda2 <= 0.0) {
    diags.push_back({line_of("time.lambda2"), "time.lambda2 must be positive"});
  }
  if (have_l && cfg.lambda2 > 0.5) {
    diags.push_back({line_of("time.lambda2"),
                     "time.lambda2 = " + get("time.lambda2")->value +
                         " exceeds 1/2 (explicit Euler is unstable)"});
  }
  if (cfg.snapshot_stride < 0) {
    diags.push_back({line_of("time.snapshot_stride"), "time.snapshot_stride must be >= 0"});
  }

  if (const auto* e = get("kernel.kind")) {
    cfg.kernel_kind = e->value;
    if (e->value != "constant" && e->value != "pieces") {
      diags.push_back({e->line, "kernel.kind must be 'constant' or 'pieces'"});
    }
  }
  if (cfg.kernel_kind == "pieces") {
    if (const auto* e = get("kernel.pieces")) {
      try {
        cfg.profile = KernelProfile::parse_pieces(e->value);
      } catch (const std::exception& ex) {
        diags.push_back({e->line, std::string("kernel.pieces: ") + ex.what()});
      }
    } else {
      diags.push_back({0, "kernel.kind = pieces requires kernel.pieces"});
    }
  } else if (const auto* e = get("kernel.pieces")) {
    diags.push_back({e->line, "kernel.pieces is only valid with kernel.kind = pieces"});
  }

  if (const auto* e = get("scheme.variant")) {
    try {
      cfg.scheme = parse_scheme(e->value);
    } catch (const std::exception& ex) {
      diags.push_back({e->line, ex.what()});
    }
  }
  if (have_n && have_r && cfg.n_half > 0 && cfg.ratio_r > 0) {
    // The original scheme reaches one node further into the local region.
    const int reach = cfg.scheme.variant == SchemeVariant::Original ? 2 * cfg.ratio_r
                                                                     : 2 * cfg.ratio_r - 1;
    if (reach > cfg.n_half) {
      diags.push_back({line_of("grid.ratio_r"),
                       "grid.ratio_r = " + std::to_string(cfg.ratio_r) +
                           " is too large for grid.n_half = " + std::to_string(cfg.n_half) +
                           (cfg.scheme.variant == SchemeVariant::Original ? " (need 2r <= N)"
                                                                           : " (need 2r - 1 <= N)")});
    }
  }
  if (const auto* e = get("case.name")) {
    cfg.case_name = e->value;
    const auto names = manufactured_case_names();
    if (std::find(names.begin(), names.end(), e->value) == names.end()) {
      diags.push_back({e->line, "unknown case.name '" + e->value + "'"});
    }
  }
  for (auto [key, slot] : {std::pair{"data.forcing", &cfg.forcing},
                           std::pair{"data.initial", &cfg.initial},
                           std::pair{"data.boundary", &cfg.boundary}}) {
    if (const auto* e = get(key)) {
      *slot = e->value;
      if (!valid_selector(e->value)) {
        diags.push_back({e->line, std::string(key) +
                                      ": expected 'case', 'constant:<c>' or 'sin:<k>', got '" +
                                      e->value + "'"});
      }
    }
  }
  if (const auto* e = get("output.dir")) {
    cfg.output_dir = e->value;
    if (e->value.empty()) diags.push_back({e->line, "output.dir must not be empty"});
  }
  if (const auto* e = get("converge.meshes")) {
    cfg.meshes.clear();
    std::stringstream ss(e->value);
    std::string item;
    bool ok = true;
    while (std::getline(ss, item, ',')) {
      const auto v = to_int(trim(item));
      if (!v || *v <= 0) {
        ok = false;
        break;
      }
      cfg.meshes.push_back(static_cast<int>(*v));
    }
    if (!ok || cfg.meshes.empty()) {
      diags.push_back({e->line, "converge.meshes: expected a comma-separated list of positive integers"});
    } else {
      for (std::size_t k = 1; k < cfg.meshes.size(); ++k) {
        if (cfg.meshes[k] != 2 * cfg.meshes[k - 1]) {
          diags.push_back({e->line, "converge.meshes must double at each level"});
          break;
        }
      }
    }
  }
  if (const auto* e = get("converge.norm")) {
    try {
      cfg.norm = parse_error_norm(e->value);
    } catch (const std::exception& ex) {
      diags.push_back({e->line, ex.what()});
    }
  }

  if (!diags.empty()) throw ConfigError(std::move(diags));
  return cfg;
}

RunConfig parse_config(std::string_view text) { return build_config(parse_entries(text)); }

ManufacturedCase resolve_data(const RunConfig& config) {
  ManufacturedCase base = manufactured_case(config.case_name);
  ManufacturedCase out = base;
  out.forcing = select(config.forcing, base.forcing);
  out.initial = select(config.initial, base.initial);
  out.boundary = select(config.boundary, base.boundary);
  return out;
}

}  // namespace qnl
