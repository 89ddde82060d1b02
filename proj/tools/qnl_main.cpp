// qnl: command-line front end for the coupled nonlocal-to-local diffusion solver.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qnl/analysis/continuum.hpp"
#include "qnl/analysis/convergence.hpp"
#include "qnl/analysis/dmp.hpp"
#include "qnl/analysis/growth.hpp"
#include "qnl/config.hpp"
#include "qnl/errors.hpp"
#include "qnl/io.hpp"
#include "qnl/stepper.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kDefaults =
    "grid.n_half = 50\n"
    "grid.ratio_r = 3\n"
    "time.T = 1\n"
    "time.lambda2 = 0.2\n";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitGuard = 2;

struct GlobalOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qnl::ConfigError({{0, "cannot read config file '" + path + "'"}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

qnl::RunConfig load_config(const GlobalOptions& opts) {
  qnl::ConfigEntries entries = qnl::parse_entries(kDefaults);
  for (auto& [k, v] : entries) v.line = 0;
  if (!opts.config_path.empty()) qnl::merge_entries(entries, qnl::parse_entries(read_file(opts.config_path)));
  std::string text;
  for (const auto& s : opts.overrides) text += s + "\n";
  qnl::ConfigEntries cli = qnl::parse_entries(text);
  for (auto& [k, v] : cli) v.line = 0;
  qnl::merge_entries(entries, cli);
  qnl::RunConfig cfg = qnl::build_config(entries);
  if (const char* env = std::getenv("QNL_OUTPUT_DIR"); env && *env) cfg.output_dir = env;
  if (!opts.output_dir.empty()) cfg.output_dir = opts.output_dir;
  return cfg;
}

qnl::Grid make_grid(const qnl::RunConfig& cfg) { return qnl::Grid(cfg.n_half, cfg.ratio_r); }

qnl::Kernel make_kernel(const qnl::RunConfig& cfg) {
  return qnl::Kernel(cfg.delta(), cfg.profile);
}

json warnings_json(const std::vector<std::string>& w) { return json(w); }

int cmd_run(const qnl::RunConfig& cfg) {
  const qnl::ManufacturedCase data = qnl::resolve_data(cfg);
  const qnl::Grid grid = make_grid(cfg);
  const qnl::Problem problem{grid,          make_kernel(cfg), cfg.scheme,     data.forcing,
                             data.initial,  data.boundary,    cfg.final_time, cfg.lambda2,
                             cfg.snapshot_stride};
  const qnl::Trajectory traj = qnl::solve(problem);
  const fs::path dir = cfg.output_dir;
  json files = json::array();
  for (const auto& snap : traj.snapshots) {
    std::vector<std::vector<double>> rows;
    for (int i = grid.first_index(); i <= grid.last_index(); ++i) rows.push_back({grid.x(i), snap.u[i]});
    const std::string name = qnl::snapshot_file_name(snap.t);
    qnl::write_csv(dir / name, {"x", "u"}, rows);
    files.push_back({{"file", name}, {"t", snap.t}, {"step", snap.step}});
  }
  json meta = qnl::meta_record(cfg);
  meta["command"] = "run";
  meta["dt"] = traj.dt;
  meta["steps"] = traj.steps;
  meta["snapshot_stride"] = cfg.snapshot_stride;
  meta["snapshots"] = files;
  meta["warnings"] = warnings_json(traj.warnings);
  qnl::write_json(dir / "meta.json", meta);
  for (const auto& w : traj.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "wrote " << traj.snapshots.size() << " snapshot(s) to " << dir.string() << '\n';
  return kExitOk;
}

int cmd_converge(const qnl::RunConfig& cfg) {
  const qnl::ConvergenceReport rep =
      qnl::convergence_study(cfg.case_name, cfg.scheme, cfg.meshes, cfg.ratio_r, cfg.lambda2,
                             cfg.final_time, cfg.norm, cfg.profile);
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : rep.rows) {
    rows.push_back({qnl::format_real(r.dx), qnl::format_real(r.error),
                    r.order ? qnl::format_real(*r.order) : std::string()});
    std::cout << "dx = 1/" << r.n_half << "  error = " << r.error;
    if (r.order) std::cout << "  order = " << *r.order;
    std::cout << '\n';
  }
  const fs::path dir = cfg.output_dir;
  qnl::write_csv_text(dir / "convergence.csv", {"dx", "error", "order"}, rows);
  json meta = qnl::meta_record(cfg);
  meta["command"] = "converge";
  meta["meshes"] = cfg.meshes;
  meta["norm"] = qnl::to_string(cfg.norm);
  if (cfg.lambda2 > 0.25) meta["warnings"] = {"lambda2 exceeds 1/4"};
  qnl::write_json(dir / "convergence_meta.json", meta);
  return kExitOk;
}

int cmd_cfl_scan(const qnl::RunConfig& cfg, int theta_points, const std::string& source) {
  qnl::CflScanOptions opts;
  opts.theta_points = theta_points;
  if (source == "displayed") {
    opts.source = qnl::GrowthSource::Displayed;
  } else if (source != "rows") {
    throw std::invalid_argument("--source must be 'rows' or 'displayed'");
  }
  const qnl::GrowthScan scan =
      qnl::cfl_scan(make_grid(cfg), make_kernel(cfg), cfg.scheme, opts);
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : scan.cases) {
    rows.push_back({qnl::to_string(c.rcase.kind),
                    c.rcase.kind == qnl::RegionCaseKind::Transitional ? std::to_string(c.rcase.node) : "",
                    qnl::format_real(c.critical_lambda2), qnl::format_real(c.argmax_theta)});
    std::cout << qnl::to_string(c.rcase.kind);
    if (c.rcase.kind == qnl::RegionCaseKind::Transitional) std::cout << " node " << c.rcase.node;
    std::cout << ": critical lambda2 = " << c.critical_lambda2 << '\n';
  }
  std::cout << "overall: " << scan.overall_min << '\n';
  const fs::path dir = cfg.output_dir;
  qnl::write_csv_text(dir / "cfl.csv", {"case", "node", "critical_lambda2", "argmax_theta"}, rows);
  json meta = qnl::meta_record(cfg);
  meta["command"] = "cfl-scan";
  meta["theta_points"] = theta_points;
  meta["source"] = source;
  meta["tolerance"] = opts.tolerance;
  meta["overall_critical_lambda2"] = scan.overall_min;
  qnl::write_json(dir / "cfl_meta.json", meta);
  return kExitOk;
}

int cmd_growth(const qnl::RunConfig& cfg, double lambda2, int theta_points, const std::string& source) {
  const auto src = source == "displayed" ? qnl::GrowthSource::Displayed : qnl::GrowthSource::Rows;
  if (source != "rows" && source != "displayed") {
    throw std::invalid_argument("--source must be 'rows' or 'displayed'");
  }
  const double l2 = lambda2 > 0.0 ? lambda2 : cfg.lambda2;
  const auto table =
      qnl::growth_table(make_grid(cfg), make_kernel(cfg), cfg.scheme, l2, theta_points, src);
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : table) {
    std::string name = qnl::to_string(s.rcase.kind);
    if (s.rcase.kind == qnl::RegionCaseKind::Transitional) name += ":" + std::to_string(s.rcase.node);
    rows.push_back({name, qnl::format_real(s.theta), qnl::format_real(s.g.real()),
                    qnl::format_real(s.g.imag()), qnl::format_real(std::abs(s.g))});
  }
  const fs::path dir = cfg.output_dir;
  qnl::write_csv_text(dir / "growth.csv", {"case", "theta", "re_g", "im_g", "abs_g"}, rows);
  json meta = qnl::meta_record(cfg);
  meta["command"] = "growth";
  meta["lambda2"] = l2;
  meta["theta_points"] = theta_points;
  meta["source"] = source;
  qnl::write_json(dir / "growth_meta.json", meta);
  std::cout << "wrote " << rows.size() << " samples\n";
  return kExitOk;
}

int cmd_dmp_test(const qnl::RunConfig& cfg, std::uint64_t seed, int trials, const std::string& mode_name) {
  qnl::DmpMode mode = qnl::DmpMode::Bound;
  if (mode_name == "corollary") {
    mode = qnl::DmpMode::Corollary;
  } else if (mode_name != "bound") {
    throw std::invalid_argument("--mode must be 'bound' or 'corollary'");
  }
  if (trials < 0) throw std::invalid_argument("--trials must be non-negative");
  const qnl::DmpTrialSummary summary = qnl::run_dmp_trials(seed, trials, mode);
  json list = json::array();
  for (const auto& t : summary.trials) {
    list.push_back({{"n_half", t.n_half},
                    {"ratio_r", t.ratio_r},
                    {"final_time", t.final_time},
                    {"hypothesis_satisfied", t.report.hypothesis_satisfied},
                    {"reason", t.report.reason},
                    {"bound", t.report.bound},
                    {"max_value", t.report.max_value},
                    {"worst_margin", t.report.worst_margin},
                    {"violations", t.report.violations},
                    {"verdict", qnl::to_string(t.report.verdict)}});
  }
  json report{{"tool_version", qnl::kToolVersion},
              {"command", "dmp-test"},
              {"seed", seed},
              {"trials", trials},
              {"mode", mode_name},
              {"lambda2", 0.25},
              {"scheme", "new-stability"},
              {"violations", summary.violations},
              {"not_applicable", summary.not_applicable},
              {"worst_margin", summary.worst_margin},
              {"passed", summary.violations == 0},
              {"results", list}};
  qnl::write_json(fs::path(cfg.output_dir) / "dmp_report.json", report);
  std::cout << trials << " trials, " << summary.violations << " violation(s), worst margin "
            << summary.worst_margin << '\n';
  return summary.violations == 0 ? kExitOk : kExitGuard;
}

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double t = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad time '" + item + "'");
    out.push_back(t);
  }
  return out;
}

int cmd_compare(const qnl::RunConfig& cfg, const std::string& new_name, const std::string& orig_name,
                const std::string& times_text) {
  const qnl::Scheme new_scheme = qnl::parse_scheme(new_name);
  const qnl::Scheme orig_scheme = qnl::parse_scheme(orig_name);
  std::vector<double> times = parse_times(times_text);
  for (double t : times) {
    if (!(t >= 0.0 && t <= cfg.final_time)) throw std::invalid_argument("compare time outside [0, T]");
  }
  const qnl::ManufacturedCase data = qnl::resolve_data(cfg);
  const qnl::Grid grid = make_grid(cfg);
  const qnl::TimeGrid tg = qnl::make_time_grid(grid.dx(), cfg.lambda2, cfg.final_time);

  // Requested times are snapped to the nearest step time t^n.
  std::vector<long> wanted;
  for (double t : times) {
    long n = std::lround(t / tg.dt);
    wanted.push_back(std::min(n, tg.steps));
  }
  wanted.push_back(tg.steps);

  auto collect = [&](const qnl::Scheme& scheme) {
    std::vector<qnl::Field> out(wanted.size(), qnl::Field(grid));
    const qnl::Problem problem{grid,         make_kernel(cfg), scheme,         data.forcing,
                               data.initial, data.boundary,    cfg.final_time, cfg.lambda2,
                               0};
    qnl::solve(problem, [&](long n, double, const qnl::Field& u) {
      for (std::size_t k = 0; k < wanted.size(); ++k) {
        if (wanted[k] == n) out[k] = u;
      }
    });
    return out;
  };
  const auto u_new = collect(new_scheme);
  const auto u_orig = collect(orig_scheme);

  const fs::path dir = cfg.output_dir;
  std::vector<double> xs;
  for (int i = grid.first_index(); i <= grid.last_index(); ++i) xs.push_back(grid.x(i));
  std::vector<double> exact(xs.size());
  json files = json::array();
  for (std::size_t k = 0; k < wanted.size(); ++k) {
    const double t = tg.time(wanted[k], cfg.final_time);
    data.exact(xs, t, exact);
    std::vector<std::vector<double>> rows;
    for (int i = grid.first_index(); i <= grid.last_index(); ++i) {
      const auto s = static_cast<std::size_t>(grid.storage(i));
      rows.push_back({xs[s], u_new[k][i], u_orig[k][i], exact[s]});
    }
    const bool final = k + 1 == wanted.size();
    const std::string name = final ? "compare.csv" : "compare_" + qnl::snapshot_file_name(t).substr(2);
    qnl::write_csv(dir / name, {"x", "u_new", "u_original", "u_exact"}, rows);
    files.push_back({{"file", name}, {"t", t}});
  }
  json meta = qnl::meta_record(cfg);
  meta["command"] = "compare";
  meta["new_scheme"] = qnl::to_string(new_scheme);
  meta["original_scheme"] = qnl::to_string(orig_scheme);
  meta["files"] = files;
  qnl::write_json(dir / "compare_meta.json", meta);
  std::cout << "wrote " << files.size() << " comparison file(s)\n";
  return kExitOk;
}

int cmd_matrix(const qnl::RunConfig& cfg) {
  const qnl::Grid grid = make_grid(cfg);
  const qnl::StencilMatrix m = qnl::assemble(grid, make_kernel(cfg), cfg.scheme);
  std::vector<std::vector<std::string>> rows;
  for (int i = 1; i <= grid.interior_size(); ++i) {
    for (const auto& e : m.row(i)) {
      rows.push_back({std::to_string(i), std::to_string(e.column), qnl::format_real(e.coefficient)});
    }
  }
  const fs::path dir = cfg.output_dir;
  qnl::write_csv_text(dir / "matrix.csv", {"row_index", "col_index", "coefficient"}, rows);
  json meta = qnl::meta_record(cfg);
  meta["command"] = "matrix";
  qnl::write_json(dir / "matrix_meta.json", meta);
  std::cout << "wrote " << rows.size() << " entries\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled nonlocal-to-local diffusion solver"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("-c,--config", g.config_path, "key = value config file");
  app.add_option("-s,--set", g.overrides, "override a config key (key=value), repeatable");
  app.add_option("-o,--output", g.output_dir, "output directory (overrides output.dir and QNL_OUTPUT_DIR)");

  auto* run = app.add_subcommand("run", "solve and write snapshots plus meta.json");
  auto* converge = app.add_subcommand("converge", "convergence study against the case's exact solution");
  std::string case_name;
  std::string meshes;
  std::string norm;
  converge->add_option("--case", case_name, "manufactured case (example1, example2)");
  converge->add_option("--meshes", meshes, "comma-separated N list, each doubling the previous");
  converge->add_option("--norm", norm, "interior | with-boundary");

  auto* cfl = app.add_subcommand("cfl-scan", "critical lambda2 per region by von Neumann scan");
  int theta_points = 4096;
  std::string source = "rows";
  cfl->add_option("--theta-points", theta_points, "theta grid size")->check(CLI::PositiveNumber);
  cfl->add_option("--source", source, "rows | displayed");

  auto* dmp = app.add_subcommand("dmp-test", "randomized discrete maximum principle trials");
  std::uint64_t seed = 0;
  int trials = 100;
  std::string mode = "bound";
  dmp->add_option("--seed", seed, "random seed");
  dmp->add_option("--trials", trials, "number of trials");
  dmp->add_option("--mode", mode, "bound | corollary");

  auto* growth = app.add_subcommand("growth", "growth factor samples g(theta)");
  double growth_lambda2 = 0.0;
  int growth_points = 512;
  std::string growth_source = "rows";
  growth->add_option("--lambda2", growth_lambda2, "lambda2 (default: time.lambda2)");
  growth->add_option("--theta-points", growth_points, "theta grid size")->check(CLI::PositiveNumber);
  growth->add_option("--source", growth_source, "rows | displayed");

  auto* compare = app.add_subcommand("compare", "new and original scheme side by side");
  std::string new_name = "new-stability";
  std::string orig_name = "original-nonlocal-halved";
  std::string times;
  compare->add_option("--new", new_name, "new-scheme variant");
  compare->add_option("--original", orig_name, "original-scheme variant");
  compare->add_option("--times", times, "extra comma-separated output times");

  auto* matrix = app.add_subcommand("matrix", "dump assembled rows as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!case_name.empty()) g.overrides.push_back("case.name=" + case_name);
    if (!meshes.empty()) g.overrides.push_back("converge.meshes=" + meshes);
    if (!norm.empty()) g.overrides.push_back("converge.norm=" + norm);
    const qnl::RunConfig cfg = load_config(g);
    if (run->parsed()) return cmd_run(cfg);
    if (converge->parsed()) return cmd_converge(cfg);
    if (cfl->parsed()) return cmd_cfl_scan(cfg, theta_points, source);
    if (dmp->parsed()) return cmd_dmp_test(cfg, seed, trials, mode);
    if (growth->parsed()) return cmd_growth(cfg, growth_lambda2, growth_points, growth_source);
    if (compare->parsed()) return cmd_compare(cfg, new_name, orig_name, times);
    if (matrix->parsed()) return cmd_matrix(cfg);
  } catch (const qnl::ConfigError& e) {
    std::cerr << "config error:\n" << e.what() << '\n';
    return kExitUsage;
  } catch (const qnl::NumericalGuardError& e) {
    std::cerr << "numerical guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
