#include "lgcp/cli.hpp"

#include "lgcp/config.hpp"
#include "lgcp/csv.hpp"
#include "lgcp/report.hpp"
#include "lgcp/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <thread>
#include <vector>

namespace lgcp {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::string out_dir = ".";
  unsigned threads = 0;
};

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  body(f);
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

PointSettings point_settings(const RunConfig& cfg) {
  return {cfg.sequence, cfg.coupling(), cfg.powder(), cfg.spectrum, {}};
}

std::string summary_line(const ScaleFactorResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "scale factor k = %.4f +/- %.4f (splitting %.4f kHz, peak %.4f kHz, delta %.4f kHz)%s", r.k,
                r.uncertainty, r.observed_hz * 1e-3, r.peak_freq_hz * 1e-3, r.true_delta_hz * 1e-3,
                r.transfer_detected ? "" : " [no transfer detected]");
  return buf;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load_config(o.config);
  const PointResult r = run_point(point_settings(cfg), o.threads);
  for (const auto& w : r.curve.warnings) err << "warning: " << w << "\n";
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  write_file(dir / "buildup.csv", [&](std::ostream& f) { csv::write_buildup(f, r.curve); });
  write_file(dir / "spectrum.csv", [&](std::ostream& f) { csv::write_spectrum(f, r.spectrum); });
  write_file(dir / "summary.csv", [&](std::ostream& f) { csv::write_summary(f, r.scale); });
  out << summary_line(r.scale) << "\n";
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream&) {
  const RunConfig cfg = load_config(o.config);
  const SweepSpec spec = cfg.sweep_spec();
  const ContourTable table = run_sweep(spec, o.threads);
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  write_file(dir / "contour.csv", [&](std::ostream& f) { csv::write_contour(f, table); });
  write_file(dir / "scale_factors.csv", [&](std::ostream& f) { csv::write_scale_table(f, table); });
  std::size_t ok = 0, failed = 0;
  for (const auto& row : table.rows) {
    ok += row.status == PointStatus::Ok;
    failed += row.status == PointStatus::Failed;
  }
  out << "sweep " << to_string(table.parameter) << ": " << table.rows.size() << " points, " << ok
      << " with transfer, " << failed << " failed; bin width " << csv::format_float(table.raw_bin_hz) << " Hz\n";
  return kExitOk;
}

int cmd_predict(const Options& o, std::ostream& out, std::ostream&) {
  const RunConfig cfg = load_config(o.config);
  print_prediction(out, predict(cfg));
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load_config(o.config);
  Comparison c{predict(cfg), {}};
  const PointResult r = run_point(point_settings(cfg), o.threads);
  for (const auto& w : r.curve.warnings) err << "warning: " << w << "\n";
  c.numeric = r.scale;
  print_comparison(out, c);
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  write_file(dir / "report.csv", [&](std::ostream& f) { write_comparison_csv(f, c); });
  return kExitOk;
}

}  // namespace

int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-spin LGCP/MAS simulator and scale-factor analysis", "lgcpsim"};
  app.require_subcommand(1);
  Options opts;
  opts.threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--threads", opts.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", opts.out_dir, "output directory for CSV files");

  using Handler = int (*)(const Options&, std::ostream&, std::ostream&);
  struct Command {
    const char* name;
    const char* help;
    Handler run;
  };
  const Command commands[] = {
      {"simulate", "powder simulation: buildup, spectrum and scale factor CSVs", cmd_simulate},
      {"sweep", "parameter sweep: contour and scale-factor table CSVs", cmd_sweep},
      {"predict", "analytic tilted-frame report", cmd_predict},
      {"report", "analytic prediction next to the simulated spectrum", cmd_report},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("config", opts.config, "configuration file")->required();
    sub->fallthrough();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitConfigError;
  }

  for (const auto& c : commands) {
    if (!app.got_subcommand(c.name)) continue;
    try {
      return c.run(opts, out, err);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << "\n";
      return kExitConfigError;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitRuntimeError;
    }
  }
  return kExitConfigError;
}

}  // namespace lgcp
