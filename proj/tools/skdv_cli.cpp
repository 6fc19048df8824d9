// Command-line front end: one subcommand per experiment.
//   exit 0: every verdict passed, 1: some verdict failed or the run aborted,
//   2: configuration or budget error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "skdv/config.hpp"
#include "skdv/snapshot.hpp"
#include "skdv/studies.hpp"

namespace {

int finish(const skdv::Report& r, const skdv::ExperimentConfig& cfg, const std::string& dir) {
  skdv::write_report(r, cfg, dir);
  for (const auto& v : r.verdicts)
    std::printf("%-48s %s  value=%.6g threshold=%.6g (%s)\n", v.name.c_str(), v.pass ? "PASS" : "FAIL", v.value,
                v.threshold, v.rule.c_str());
  if (r.summary.contains("boundary_monitor") && !r.summary["boundary_monitor"]["run_valid"].get<bool>())
    std::printf("note: boundary monitor flagged this run (see %s_summary.json)\n", r.study.c_str());
  std::printf("%s: %s, report in %s\n", r.study.c_str(), r.all_pass() ? "all verdicts pass" : "FAILED", dir.c_str());
  return r.all_pass() ? 0 : 1;
}

int inspect(const std::string& path) {
  double t = 0.0;
  const skdv::Field f = skdv::load_field(path, &t);
  std::printf("%s: n_points=%zu box_length=%.17g time=%.17g l2=%.17g max=%.17g\n", path.c_str(),
              f.grid.n_points(), f.grid.box_length(), t, skdv::l2_norm(f), skdv::max_abs(f));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled Schrodinger / fifth-order KdV experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir, snapshot_path, inspect_path;
  const char* names[] = {"simulate", "smoothing", "blowup", "audit", "norms", "snapshot"};
  const char* help[] = {"evolve the system and check conservation",
                        "grid convergence of the nonlinear parts at t*",
                        "Holder quotients at t*/2 and t* on a refinement ladder",
                        "calculus inequality sweeps and kernel suprema",
                        "diagnostics of the initial data or of a snapshot",
                        "write and re-read the initial data snapshots"};
  for (int i = 0; i < 6; ++i) {
    auto* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", out_dir, "output directory (default: outputs.directory)");
    if (std::string(names[i]) == "norms") sub->add_option("--snapshot", snapshot_path, "diagnose a stored field");
    if (std::string(names[i]) == "snapshot") sub->add_option("--inspect", inspect_path, "print a snapshot header");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    if (cmd == "snapshot" && !inspect_path.empty()) return inspect(inspect_path);
    const skdv::ExperimentConfig cfg = config_path.empty() ? skdv::parse_config("") : skdv::load_config(config_path);
    const std::string dir = out_dir.empty() ? cfg.directory : out_dir;
    if (cmd == "simulate") return finish(skdv::run_simulation(cfg), cfg, dir);
    if (cmd == "smoothing") return finish(skdv::run_smoothing_study(cfg), cfg, dir);
    if (cmd == "blowup") return finish(skdv::run_blowup_study(cfg), cfg, dir);
    if (cmd == "audit") return finish(skdv::run_estimate_audit(cfg), cfg, dir);
    if (cmd == "norms")
      return finish(skdv::run_norms(cfg, snapshot_path.empty() ? std::nullopt : std::optional(snapshot_path)), cfg,
                    dir);
    return finish(skdv::run_snapshot(cfg, dir), cfg, dir);
  } catch (const skdv::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const skdv::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << cmd << " failed: " << e.what() << "\n";
    return 1;
  }
}
