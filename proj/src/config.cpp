#include "skdv/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace skdv {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_real(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || !std::isfinite(x)) throw ConfigError(key + ": expected a finite real, got '" + v + "'");
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

std::vector<Triple> to_triples(const std::string& key, const std::string& v) {
  std::vector<Triple> out;
  for (const auto& part : split(v, ';')) {
    std::istringstream is(part);
    std::vector<std::string> words;
    for (std::string w; is >> w;) words.push_back(w);
    if (words.size() != 3) throw ConfigError(key + ": each entry needs three numbers 'b beta a'");
    out.push_back({to_real(key, words[0]), to_real(key, words[1]), to_real(key, words[2])});
  }
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

struct Entry {
  std::string key;
  std::function<void(const std::string&)> set;
  std::function<std::string()> get;
};

std::vector<Entry> schema(ExperimentConfig& c) {
  std::vector<Entry> e;
  auto real = [&](const char* k, double& ref) {
    e.push_back({k, [&ref, k](const std::string& v) { ref = to_real(k, v); }, [&ref] { return fmt(ref); }});
  };
  auto integer = [&](const char* k, auto& ref) {
    e.push_back({k,
                 [&ref, k](const std::string& v) {
                   const long long x = to_int(k, v);
                   if (x < 0) throw ConfigError(std::string(k) + ": must be non-negative");
                   ref = static_cast<std::remove_reference_t<decltype(ref)>>(x);
                 },
                 [&ref] { return std::to_string(ref); }});
  };
  auto text = [&](const char* k, std::string& ref) {
    e.push_back({k, [&ref](const std::string& v) { ref = v; }, [&ref] { return ref; }});
  };
  auto triples = [&](const char* k, std::vector<Triple>& ref) {
    e.push_back({k, [&ref, k](const std::string& v) { ref = to_triples(k, v); },
                 [&ref] {
                   std::string s;
                   for (const auto& t : ref) s += (s.empty() ? "" : "; ") + fmt(t[0]) + " " + fmt(t[1]) + " " + fmt(t[2]);
                   return s;
                 }});
  };

  integer("grid.n_points", c.n_points);
  real("grid.box_length", c.box_length);
  real("time.T", c.T);
  real("time.dt", c.dt);
  integer("time.save_every", c.save_every);
  real("params.alpha", c.params.alpha);
  real("params.gamma", c.params.gamma);
  real("params.epsilon", c.params.epsilon);
  text("initial.kind", c.initial_kind);
  real("initial.u_sigma", c.u_sigma);
  real("initial.v_amplitude", c.v_amplitude);
  real("initial.v_sigma", c.v_sigma);
  real("initial.v_shift", c.v_shift);
  real("blowup.theta", c.blowup.theta);
  real("blowup.x0", c.blowup.x0);
  integer("blowup.series_length", c.blowup.series_length);
  real("blowup.coeff_decay", c.blowup.coeff_decay);
  real("blowup.holder_eps", c.holder_eps);
  real("blowup.v_alpha", c.v_alpha);
  integer("blowup.holder_window", c.holder_window);
  real("blowup.diverge_ratio", c.diverge_ratio);
  real("blowup.bounded_ratio", c.bounded_ratio);
  real("blowup.argmax_cells", c.argmax_cells);
  real("budget.s", c.budget.s);
  real("budget.b", c.budget.b);
  real("budget.beta", c.budget.beta);
  real("budget.abar", c.budget.abar);
  real("budget.a", c.budget.a);
  text("solver.method", c.method);
  integer("solver.max_iter", c.max_iter);
  real("solver.tol", c.tol);
  real("smoothing.free_exponent", c.free_exponent);
  real("smoothing.tail_lo", c.tail_lo);
  real("smoothing.tail_hi_fraction", c.tail_hi_fraction);
  real("smoothing.converged_tol", c.converged_tol);
  real("smoothing.free_change_min", c.free_change_min);
  real("smoothing.tail_gain_min", c.tail_gain_min);
  real("simulate.mass_tol", c.mass_tol);
  real("simulate.mean_tol", c.mean_tol);
  real("audit.xi_range", c.xi_range);
  real("audit.tau_range", c.tau_range);
  integer("audit.quad_points", c.quad_points);
  real("audit.stabilization_tol", c.stabilization_tol);
  triples("audit.schrodinger_triples", c.schrodinger_triples);
  triples("audit.kdv5_triples", c.kdv5_triples);
  e.push_back({"audit.separations",
               [&c](const std::string& v) {
                 c.separations.clear();
                 for (const auto& w : split(v, ',')) c.separations.push_back(to_real("audit.separations", w));
                 if (c.separations.size() < 2) throw ConfigError("audit.separations: need at least two values");
               },
               [&c] {
                 std::string s;
                 for (double x : c.separations) s += (s.empty() ? "" : ", ") + fmt(x);
                 return s;
               }});
  real("audit.ratio_spread_max", c.ratio_spread_max);
  integer("audit.probes", c.probes);
  real("audit.probe_ratio_lo", c.probe_ratio_lo);
  real("audit.probe_ratio_hi", c.probe_ratio_hi);
  integer("audit.seed", c.seed);
  real("monitor.boundary_fraction", c.boundary_fraction);
  real("monitor.boundary_tol", c.boundary_tol);
  text("outputs.directory", c.directory);
  text("outputs.formats", c.formats);
  return e;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  auto table = schema(c);
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    auto it = std::find_if(table.begin(), table.end(), [&](const Entry& e) { return e.key == key; });
    if (it == table.end()) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    if (value.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty value for '" + key + "'");
    it->set(value);
  }
  validate_common(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string render_config(const ExperimentConfig& c) {
  ExperimentConfig copy = c;
  std::string out;
  for (const auto& e : schema(copy)) out += e.key + " = " + e.get() + "\n";
  return out;
}

void validate_common(const ExperimentConfig& c) {
  try {
    (void)c.grid();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(c.T > 0.0 && c.T <= 0.5)) throw ConfigError("time.T must lie in (0, 1/2]");
  if (!(c.dt > 0.0 && c.dt <= c.T)) throw ConfigError("time.dt must lie in (0, T]");
  const double steps = c.T / c.dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 * steps) throw ConfigError("time.dt must divide time.T");
  if (c.save_every < 1 || static_cast<long long>(std::llround(steps)) % c.save_every != 0)
    throw ConfigError("time.save_every must divide the number of steps T/dt");
  if (c.method != "exponential" && c.method != "splitstep" && c.method != "picard")
    throw ConfigError("solver.method must be exponential, splitstep or picard");
  if (c.initial_kind != "blowup" && c.initial_kind != "gaussian")
    throw ConfigError("initial.kind must be blowup or gaussian");
  try {
    c.blowup.validate();
    c.params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(c.holder_eps > 0.0 && c.holder_eps < 0.5)) throw ConfigError("blowup.holder_eps must lie in (0, 1/2)");
  if (!(c.v_alpha > 0.0 && c.v_alpha <= 1.0)) throw ConfigError("blowup.v_alpha must lie in (0, 1]");
  if (c.quad_points < 64) throw ConfigError("audit.quad_points must be >= 64");
  if (!(c.boundary_fraction > 0.0 && c.boundary_fraction < 0.5))
    throw ConfigError("monitor.boundary_fraction must lie in (0, 1/2)");
  if (!(c.tail_hi_fraction > 0.0 && c.tail_hi_fraction <= 1.0))
    throw ConfigError("smoothing.tail_hi_fraction must lie in (0, 1]");
  for (const auto& f : split(c.formats, ','))
    if (f != "csv" && f != "json") throw ConfigError("outputs.formats: unknown format '" + f + "'");
}

namespace {
void validate_focus_time(const ExperimentConfig& c) {
  const double ts = c.blowup.t_star();
  if (ts > c.T * (1.0 + 1e-12))
    throw ConfigError("blow-up time t* = 1/(4 theta) = " + fmt(ts) + " exceeds time.T = " + fmt(c.T));
  const double slots = ts / (c.dt * c.save_every);
  if (std::abs(slots - std::round(slots)) > 1e-9 * std::max(1.0, slots) || std::llround(slots) % 2 != 0)
    throw ConfigError("t* and t*/2 must fall on saved slices: t* / (dt * save_every) must be an even integer");
}
}  // namespace

void validate_smoothing(const ExperimentConfig& c) {
  validate_common(c);
  const auto bad = budget_violations(c.budget);
  if (!bad.empty()) {
    std::string msg = "inadmissible budget, violated:";
    for (const auto& b : bad) msg += " [" + b + "]";
    throw ConfigError(msg);
  }
  validate_focus_time(c);
}

void validate_blowup(const ExperimentConfig& c) {
  validate_common(c);
  validate_focus_time(c);
}

}  // namespace skdv
