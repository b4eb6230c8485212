#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "t2m/codegen.hpp"
#include "t2m/semantics.hpp"
#include "t2m/simrun.hpp"
#include "t2m/util.hpp"

using namespace t2m;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("t2m_simrun_" + std::to_string(std::chrono::steady_clock::now()
                                               .time_since_epoch()
                                               .count()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

json pendulum_plan(double gravity, double length) {
  return json{{"components",
               {{{"name", "motion"},
                 {"semantics_id", "pendulum_semi_implicit"},
                 {"states", {"angle", "angular_velocity"}},
                 {"parameters", {{"gravity", gravity}, {"length", length}}}}}}};
}

json mass_spring_plan(double mass, double k) {
  return json{{"components",
               {{{"name", "oscillator"},
                 {"semantics_id", "mass_spring_semi_implicit"},
                 {"states", {"displacement", "velocity"}},
                 {"parameters", {{"mass", mass}, {"spring_constant", k}}}}}}};
}

// Independent semi-implicit Euler loop used as the oracle for run_reference.
simrun::Trajectory oracle_pendulum(double g, double length, double theta0,
                                   double omega0, double dt, double total) {
  simrun::Trajectory t;
  double theta = theta0, omega = omega0;
  long steps = static_cast<long>(std::floor(total / dt));
  for (long i = 0; i < steps; ++i) {
    t.time.push_back(static_cast<double>(i) * dt);
    omega += -(g / length) * std::sin(theta) * dt;
    theta += omega * dt;
    t.states["angle"].push_back(theta);
    t.states["angular_velocity"].push_back(omega);
  }
  return t;
}

}  // namespace

TEST_CASE("reference step: pendulum semi-implicit update matches hand math") {
  const double g = 9.81, length = 1.5, dt = 0.01;
  const double theta0 = 0.1, omega0 = 0.0;
  auto next = simrun::reference_step("pendulum_semi_implicit",
                                     {{"angle", theta0}, {"angular_velocity", omega0}},
                                     {{"gravity", g}, {"length", length}}, dt);
  const double omega1 = omega0 - (g / length) * std::sin(theta0) * dt;
  const double theta1 = theta0 + omega1 * dt;
  CHECK(next.at("angular_velocity") == doctest::Approx(omega1).epsilon(1e-15));
  CHECK(next.at("angle") == doctest::Approx(theta1).epsilon(1e-15));

  // Velocity update happens before the position update (semi-implicit, not
  // explicit Euler): with omega0 = 0 the angle must still move on step one.
  CHECK(next.at("angle") != theta0);
}

TEST_CASE("reference step: mass-spring semi-implicit update matches hand math") {
  const double m = 2.0, k = 8.0, dt = 0.05;
  const double x0 = 0.3, v0 = -0.1;
  auto next = simrun::reference_step("mass_spring_semi_implicit",
                                     {{"displacement", x0}, {"velocity", v0}},
                                     {{"mass", m}, {"spring_constant", k}}, dt);
  const double v1 = v0 - (k / m) * x0 * dt;
  const double x1 = x0 + v1 * dt;
  CHECK(next.at("velocity") == doctest::Approx(v1).epsilon(1e-15));
  CHECK(next.at("displacement") == doctest::Approx(x1).epsilon(1e-15));
}

TEST_CASE("reference step: error handling") {
  CHECK_THROWS_AS(simrun::reference_step("unknown_template", {}, {}, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      simrun::reference_step("pendulum_semi_implicit",
                             {{"angle", std::numeric_limits<double>::quiet_NaN()},
                              {"angular_velocity", 0.0}},
                             {{"gravity", 9.81}, {"length", 1.0}}, 0.1),
      std::runtime_error);
  CHECK_THROWS_AS(simrun::reference_step("pendulum_semi_implicit",
                                         {{"angle", 0.1}, {"angular_velocity", 0.0}},
                                         {{"gravity", 9.81}}, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(simrun::reference_step("pendulum_semi_implicit",
                                         {{"angle", 0.1}},
                                         {{"gravity", 9.81}, {"length", 1.0}}, 0.1),
                  std::invalid_argument);
}

TEST_CASE("run_reference matches an independent stepping loop exactly") {
  simrun::SimConfig cfg;
  cfg.time_step = 0.01;
  cfg.total_time = 2.0;
  cfg.initial_conditions = {{"angle", 0.1}, {"angular_velocity", 0.0}};
  auto got = simrun::run_reference(pendulum_plan(9.81, 1.5), cfg);
  auto want = oracle_pendulum(9.81, 1.5, 0.1, 0.0, 0.01, 2.0);

  REQUIRE(got.steps() == want.steps());
  REQUIRE(got.steps() == 200);  // floor(2.0 / 0.01)
  for (size_t i = 0; i < got.steps(); ++i) {
    CHECK(got.time[i] == doctest::Approx(want.time[i]).epsilon(1e-15));
    CHECK(got.states.at("angle")[i] ==
          doctest::Approx(want.states.at("angle")[i]).epsilon(1e-15));
    CHECK(got.states.at("angular_velocity")[i] ==
          doctest::Approx(want.states.at("angular_velocity")[i]).epsilon(1e-15));
  }
  // The time axis starts at zero and the recorded states are post-step.
  CHECK(got.time.front() == 0.0);
  CHECK(got.states.at("angle").front() != 0.1);
}

TEST_CASE("run_reference: missing initial conditions default to zero") {
  simrun::SimConfig cfg;
  cfg.time_step = 0.1;
  cfg.total_time = 1.0;
  auto t = simrun::run_reference(mass_spring_plan(1.0, 4.0), cfg);
  REQUIRE(t.steps() == 10);
  // All-zero state is an equilibrium: nothing moves.
  for (double x : t.states.at("displacement")) CHECK(x == 0.0);
  for (double v : t.states.at("velocity")) CHECK(v == 0.0);
}

TEST_CASE("run_reference: configuration must be positive") {
  simrun::SimConfig bad;
  bad.time_step = 0.0;
  bad.total_time = 1.0;
  CHECK_THROWS_AS(simrun::run_reference(pendulum_plan(9.81, 1.5), bad),
                  std::invalid_argument);
  bad.time_step = 0.01;
  bad.total_time = -1.0;
  CHECK_THROWS_AS(simrun::run_reference(pendulum_plan(9.81, 1.5), bad),
                  std::invalid_argument);
}

TEST_CASE("run_reference is deterministic") {
  simrun::SimConfig cfg;
  cfg.time_step = 0.005;
  cfg.total_time = 3.0;
  cfg.initial_conditions = {{"angle", 0.2}};
  auto a = simrun::run_reference(pendulum_plan(9.81, 1.5), cfg);
  auto b = simrun::run_reference(pendulum_plan(9.81, 1.5), cfg);
  REQUIRE(a.steps() == b.steps());
  for (size_t i = 0; i < a.steps(); ++i)
    CHECK(a.states.at("angle")[i] == b.states.at("angle")[i]);
}

TEST_CASE("pendulum physics: small-angle period and energy drift") {
  const double g = 9.81, length = 1.5;
  simrun::SimConfig cfg;
  cfg.time_step = 0.001;
  cfg.total_time = 30.0;
  cfg.initial_conditions = {{"angle", 0.05}, {"angular_velocity", 0.0}};
  auto t = simrun::run_reference(pendulum_plan(g, length), cfg);

  // Period from successive downward zero crossings of the angle.
  const auto& angle = t.states.at("angle");
  std::vector<double> crossings;
  for (size_t i = 1; i < angle.size(); ++i)
    if (angle[i - 1] > 0 && angle[i] <= 0) crossings.push_back(t.time[i]);
  REQUIRE(crossings.size() >= 2);
  double period = 0;
  for (size_t i = 1; i < crossings.size(); ++i)
    period += crossings[i] - crossings[i - 1];
  period /= static_cast<double>(crossings.size() - 1);
  const double expected = 2.0 * M_PI * std::sqrt(length / g);
  CHECK(std::abs(period - expected) / expected < 0.01);

  // Semi-implicit Euler is symplectic: total energy stays bounded.
  const auto& omega = t.states.at("angular_velocity");
  auto energy = [&](double th, double om) {
    return 0.5 * length * length * om * om + g * length * (1.0 - std::cos(th));
  };
  const double e0 = energy(0.05, 0.0);
  for (size_t i = 0; i < angle.size(); ++i)
    CHECK(std::abs(energy(angle[i], omega[i]) - e0) / e0 < 0.01);
}

TEST_CASE("trajectory JSON round trip") {
  simrun::Trajectory t;
  t.time = {0.0, 0.1, 0.2};
  t.states["angle"] = {0.1, 0.09, 0.07};
  t.states["angular_velocity"] = {0.0, -0.05, -0.1};
  auto j = simrun::to_json(t);
  auto back = simrun::trajectory_from_json(j);
  CHECK(back.time == t.time);
  CHECK(back.states == t.states);
}

TEST_CASE("export trajectory: csv layout and json round trip") {
  TempDir dir;
  simrun::Trajectory t;
  t.time = {0.0, 0.5};
  t.states["angle"] = {0.1, 0.05};
  t.states["angular_velocity"] = {0.0, -0.2};

  auto csv_path = (dir.path / "traj.csv").string();
  simrun::export_trajectory(t, "csv", csv_path);
  std::string csv = read_file(csv_path);
  // Header row plus one row per time sample.
  size_t lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 3);
  CHECK(csv.rfind("time,angle,angular_velocity\n", 0) == 0);

  auto json_path = (dir.path / "traj.json").string();
  simrun::export_trajectory(t, "json", json_path);
  auto back = simrun::trajectory_from_json(json::parse(read_file(json_path)));
  CHECK(back.time == t.time);
  CHECK(back.states == t.states);

  CHECK_THROWS_AS(simrun::export_trajectory(t, "parquet", csv_path),
                  std::invalid_argument);
  simrun::Trajectory empty;
  CHECK_THROWS_AS(simrun::export_trajectory(empty, "csv", csv_path),
                  std::invalid_argument);
}

TEST_CASE("plot trajectory writes an SVG with one polyline per state") {
  TempDir dir;
  simrun::Trajectory t;
  t.time = {0.0, 0.1, 0.2, 0.3};
  t.states["angle"] = {0.1, 0.08, 0.04, -0.01};
  t.states["angular_velocity"] = {0.0, -0.2, -0.4, -0.5};
  auto path = (dir.path / "traj.svg").string();
  simrun::plot_trajectory(t, path);
  std::string svg = read_file(path);
  CHECK(svg.find("<svg") != std::string::npos);
  size_t polylines = 0, pos = 0;
  while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
    ++polylines;
    pos += 1;
  }
  CHECK(polylines == 2);
}

TEST_CASE("generated python simulation reproduces the reference evaluator") {
  auto diagram = bdd::bdd_from_json(
      json::parse(read_file(std::string(T2M_DATA_DIR) + "/fixtures/pendulum_bdd.json")));
  auto registry = codegen::load_registry(std::string(T2M_DATA_DIR) + "/registry.json");
  auto constants = codegen::load_constants(std::string(T2M_DATA_DIR) + "/constants.json");
  auto embedder = semantics::make_embedder("hashed-trigram:256");
  codegen::CodegenOptions opts;
  opts.mask = {1, 1};
  auto result = codegen::generate_tree(diagram, registry, constants, *embedder, opts);

  TempDir dir;
  codegen::write_tree(result, dir.path.string());

  simrun::SimConfig cfg;
  cfg.time_step = 0.01;
  cfg.total_time = 2.0;
  cfg.initial_conditions = {{"angle", 0.1}, {"angular_velocity", 0.0}};

  auto ref = simrun::run_reference(result.system_plan, cfg);
  auto gen = simrun::run_generated(dir.path.string(), cfg);

  REQUIRE(gen.steps() == ref.steps());
  REQUIRE(gen.states.count("angle") == 1);
  for (size_t i = 0; i < ref.steps(); ++i) {
    CHECK(std::abs(gen.time[i] - ref.time[i]) <= 1e-9);
    for (const auto& [name, values] : ref.states) {
      REQUIRE(gen.states.count(name) == 1);
      CHECK(std::abs(gen.states.at(name)[i] - values[i]) <= 1e-9);
    }
  }
}

TEST_CASE("run_generated requires a main.py entry point") {
  TempDir dir;
  simrun::SimConfig cfg;
  cfg.time_step = 0.1;
  cfg.total_time = 1.0;
  CHECK_THROWS_AS(simrun::run_generated(dir.path.string(), cfg), std::runtime_error);
}
