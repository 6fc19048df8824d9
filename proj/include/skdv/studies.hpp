#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "skdv/config.hpp"
#include "skdv/trajectory.hpp"

namespace skdv {

struct Verdict {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string rule;  // e.g. "value < threshold"
};

struct CsvTable {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string render() const;  // %.17g, comma separated, header first
};

struct Report {
  std::string study;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<CsvTable> tables;
  std::vector<Verdict> verdicts;

  bool all_pass() const;
};

// Peak magnitude in the outer `fraction` of the box on each side, relative to
// the global peak, maximised over all slices.
struct BoundaryMonitor {
  double u_ratio = 0.0;
  double v_ratio = 0.0;
  bool u_flagged = false;
  bool v_flagged = false;
  bool run_valid() const { return !u_flagged && !v_flagged; }
};

double boundary_ratio(const Field& f, double fraction);
BoundaryMonitor monitor_boundary(const Trajectory& traj, double fraction, double tol);

// initial.kind: blowup data from the blowup.* section or the Gaussian pair.
std::pair<Field, Field> initial_pair(const ExperimentConfig& cfg, const Grid1D& g);

// Integrates to time.T with solver.method; slices every save_every * dt.
Trajectory evolve(const ExperimentConfig& cfg, const Field& u0, const Field& v0);

Report run_simulation(const ExperimentConfig& cfg);
Report run_smoothing_study(const ExperimentConfig& cfg);
Report run_blowup_study(const ExperimentConfig& cfg);
Report run_estimate_audit(const ExperimentConfig& cfg);
// Diagnostics of the configured initial data, or of a stored field.
Report run_norms(const ExperimentConfig& cfg, const std::optional<std::string>& snapshot = std::nullopt);
// Writes u0 and v0 snapshots into dir and checks the round trip.
Report run_snapshot(const ExperimentConfig& cfg, const std::string& dir);

// <dir>/<study>_<table>.csv and <dir>/<study>_summary.json, per
// outputs.formats. Contents depend only on the config.
void write_report(const Report& r, const ExperimentConfig& cfg, const std::string& dir);

}  // namespace skdv
