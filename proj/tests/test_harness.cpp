#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "skdv/config.hpp"
#include "skdv/snapshot.hpp"
#include "skdv/studies.hpp"
#include "support.hpp"

using namespace skdv;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("skdv_harness_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SKDV_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* small_gaussian =
    "grid.n_points = 256\n"
    "grid.box_length = 60\n"
    "time.T = 0.01\n"
    "time.dt = 1e-3\n"
    "time.save_every = 2\n"
    "initial.kind = gaussian\n"
    "solver.method = splitstep\n";

}  // namespace

TEST_CASE("configuration parsing") {
  SUBCASE("defaults and comments") {
    const ExperimentConfig c = parse_config("# nothing but a comment\n\n  grid.n_points = 4096  # trailing\n");
    CHECK(c.n_points == 4096);
    CHECK(c.box_length == 512.0);
    CHECK(c.holder_eps == 0.0625);
    CHECK(c.schrodinger_triples.size() == 2);
  }
  SUBCASE("rendering round trips") {
    const ExperimentConfig c = parse_config("params.alpha = 0.3\naudit.kdv5_triples = 0.48 0.69 0.9\n");
    const std::string text = render_config(c);
    CHECK(render_config(parse_config(text)) == text);
    CHECK(text.find("audit.kdv5_triples = 0.47999999999999998 0.68999999999999995 0.90000000000000002") !=
          std::string::npos);
  }
  SUBCASE("strict rejection") {
    CHECK_THROWS_AS(parse_config("grid.points = 12\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("time.T = 0.1\ntime.T = 0.2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("time.T = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid.n_points 1024\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid.n_points = 1000\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("time.T = 0.75\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("solver.method = euler\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("outputs.formats = csv,xml\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/skdv.cfg"), ConfigError);
  }
  SUBCASE("study preconditions") {
    ExperimentConfig c;
    c.budget.beta = 0.7;  // beyond 5b/2 - 5/8
    try {
      validate_smoothing(c);
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("beta < 5b/2 - 5/8") != std::string::npos);
    }
    ExperimentConfig late;
    late.blowup.theta = 0.5;  // t* = 1/2 > T = 1/4
    CHECK_THROWS_AS(validate_blowup(late), ConfigError);
    ExperimentConfig coarse;
    coarse.save_every = 50;  // t* / (dt * save_every) = 50, but t*/2 = 25 slices away
    CHECK_NOTHROW(validate_blowup(coarse));
    coarse.save_every = 100;
    CHECK_THROWS_AS(validate_blowup(coarse), ConfigError);
  }
}

TEST_CASE("snapshots") {
  const fs::path dir = scratch("snap");
  const Grid1D g(64, 12.5);
  const Field f = skdv::testing::random_field(g, 31);
  const std::string path = (dir / "f.dsp").string();
  save_field(f, path, 0.375);

  SUBCASE("bit-identical round trip") {
    double t = 0.0;
    const Field back = load_field(path, &t);
    CHECK(t == 0.375);
    CHECK(back.grid == g);
    CHECK(std::memcmp(back.values.data(), f.values.data(), f.size() * sizeof(cplx)) == 0);
    CHECK(fs::file_size(path) == 28 + 16 * 64);
  }
  SUBCASE("layout") {
    const std::string bytes = slurp(path);
    CHECK(bytes.substr(0, 4) == "DSP1");
    CHECK(static_cast<unsigned char>(bytes[4]) == 64);
    for (int i = 5; i < 12; ++i) CHECK(bytes[i] == 0);
  }
  SUBCASE("corruption") {
    const std::string bytes = slurp(path);
    const std::string cut = (dir / "cut.dsp").string();
    std::ofstream(cut, std::ios::binary) << bytes.substr(0, bytes.size() - 5);
    CHECK_THROWS_AS(load_field(cut), SnapshotError);
    std::ofstream(cut, std::ios::binary | std::ios::trunc) << bytes.substr(0, 10);
    CHECK_THROWS_AS(load_field(cut), SnapshotError);
    std::string bad = bytes;
    bad[3] = '2';
    std::ofstream(cut, std::ios::binary | std::ios::trunc) << bad;
    CHECK_THROWS_AS(load_field(cut), SnapshotError);
    CHECK_THROWS_AS(load_field((dir / "missing.dsp").string()), SnapshotError);
    CHECK_THROWS_AS(save_field(f, (dir / "no/such/dir/f.dsp").string()), SnapshotError);
  }
}

TEST_CASE("boundary monitor") {
  const Grid1D g(512, 100.0);
  const Field inside = sample(g, [](double x) { return cplx(std::exp(-x * x)); });
  const Field spread = sample(g, [](double x) { return cplx(1.0 / (1.0 + x * x)); });
  CHECK(boundary_ratio(inside, 0.05) < 1e-100);
  CHECK(boundary_ratio(spread, 0.05) == doctest::Approx(1.0 / (1.0 + 45.0 * 45.0)).epsilon(0.05));
  Trajectory traj(g);
  traj.dt = 1.0;
  traj.times = {0.0};
  traj.u = {inside};
  traj.v = {spread};
  const BoundaryMonitor m = monitor_boundary(traj, 0.05, 1e-6);
  CHECK_FALSE(m.u_flagged);
  CHECK(m.v_flagged);
  CHECK_FALSE(m.run_valid());
}

TEST_CASE("studies") {
  SUBCASE("reports are deterministic") {
    const ExperimentConfig c = parse_config(small_gaussian);
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    write_report(run_simulation(c), c, a.string());
    write_report(run_simulation(c), c, b.string());
    for (const char* file : {"simulate_summary.json", "simulate_timeseries.csv"}) {
      CHECK(fs::exists(a / file));
      CHECK(slurp(a / file) == slurp(b / file));
    }
  }
  SUBCASE("format selection") {
    ExperimentConfig c = parse_config(small_gaussian);
    c.formats = "csv";
    const fs::path d = scratch("fmt");
    write_report(run_simulation(c), c, d.string());
    CHECK(fs::exists(d / "simulate_timeseries.csv"));
    CHECK_FALSE(fs::exists(d / "simulate_summary.json"));
  }
  SUBCASE("smoothing without nonlinearity is a trivial pass") {
    ExperimentConfig c = parse_config(
        "grid.n_points = 1024\ntime.dt = 1e-3\ntime.save_every = 5\n"
        "params.alpha = 0\nparams.gamma = 0\nparams.epsilon = 0\n");
    const Report r = run_smoothing_study(c);
    CHECK(r.summary["trivial"].get<bool>());
    REQUIRE(r.verdicts.size() == 1);
    CHECK(r.all_pass());
  }
  SUBCASE("snapshot study") {
    const ExperimentConfig c = parse_config("grid.n_points = 1024\n");
    const fs::path d = scratch("snapstudy");
    const Report r = run_snapshot(c, d.string());
    CHECK(r.all_pass());
    CHECK(fs::exists(d / "u0.dsp"));
    const Report n = run_norms(c, (d / "v0.dsp").string());
    CHECK(n.summary["field"]["n_points"].get<std::size_t>() == 1024);
  }
}

TEST_CASE("command line exit codes") {
  const fs::path d = scratch("cli");
  {
    std::ofstream(d / "bad_budget.cfg") << "budget.b = 0.45\n";
    std::ofstream(d / "unknown.cfg") << "grid.size = 3\n";
    std::ofstream(d / "small.cfg") << small_gaussian;
    std::ofstream(d / "strict.cfg") << small_gaussian << "simulate.mass_tol = 0\n";
  }
  const std::string out = " --out " + (d / "out").string();
  CHECK(run_cli("smoothing --config " + (d / "bad_budget.cfg").string() + out) == 2);
  CHECK(run_cli("simulate --config " + (d / "unknown.cfg").string() + out) == 2);
  CHECK(run_cli("simulate --config " + (d / "small.cfg").string() + out) == 0);
  CHECK(run_cli("simulate --config " + (d / "strict.cfg").string() + out) == 1);
  CHECK(run_cli("snapshot --config " + std::string(SKDV_CONFIG_DIR) + "/blowup.cfg" + out) == 0);
  CHECK(run_cli("snapshot --inspect " + (d / "out" / "u0.dsp").string()) == 0);
  CHECK(run_cli("snapshot --inspect " + (d / "small.cfg").string()) == 1);
}
