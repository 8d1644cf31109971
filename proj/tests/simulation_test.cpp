#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "clobs/run_config.hpp"
#include "clobs/simulation.hpp"

using namespace clobs;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig short_config() {
  RunConfig cfg;
  cfg.duration = 3.0;
  cfg.noise_variance = 0.001;
  cfg.seed = 3;
  return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_config(
      "# comment\n"
      "tau1 = 0.9   # trailing\n"
      "\n"
      "stack_capacity=150\n"
      "truth_integrator = rk4\n"
      "purge_requires_full_stack = true\n");
  CHECK(cfg.tau1 == 0.9);
  CHECK(cfg.tau2 == 0.3);
  CHECK(cfg.stack_capacity == 150);
  CHECK(cfg.truth_integrator == TruthIntegrator::kRk4);
  CHECK(cfg.purge_requires_full_stack);
  CHECK(cfg.resolved_k_theta() == doctest::Approx(0.5 / 150));
  CHECK(cfg.resolved_dwell_time() == doctest::Approx(2.4));
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("tua1 = 0.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("tau1 0.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("tau1 = fast\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("seed = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("tau1 = 0.5003\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse_config("xi = 0\n").validate(), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), ConfigError);
}

TEST_CASE("config echo round-trips") {
  RunConfig cfg;
  cfg.k_theta = 0.0123;
  cfg.noise_variance = 1e-3;
  std::string text;
  for (const auto& [key, value] : cfg.entries()) text += key + " = " + value + "\n";
  const RunConfig back = parse_config(text);
  CHECK(back.entries() == cfg.entries());
}

TEST_CASE("zero duration produces metadata only") {
  RunConfig cfg;
  cfg.duration = 0.0;
  const RunLog log = run(cfg);
  CHECK(log.completed);
  CHECK(log.records.empty());
  CHECK(log.events.empty());
  CHECK_FALSE(log.metadata.empty());
}

TEST_CASE("runs are deterministic and write identical files") {
  const RunLog a = run(short_config());
  const RunLog b = run(short_config());
  REQUIRE(a.completed);
  REQUIRE(a.records.size() == b.records.size());
  CHECK(a.records.back().theta_hat == b.records.back().theta_hat);

  const auto base = std::filesystem::temp_directory_path() / "clobs_simulation_test";
  std::filesystem::remove_all(base);
  write_run_log(a, base / "a");
  write_run_log(b, base / "b");
  for (const char* file : {"trajectory.csv", "events.csv", "meta.txt"}) {
    CHECK(slurp(base / "a" / file) == slurp(base / "b" / file));
  }
  std::filesystem::remove_all(base);

  RunConfig other = short_config();
  other.seed = 4;
  CHECK(run(other).records.back().theta_hat != a.records.back().theta_hat);
}

TEST_CASE("log layout") {
  const RunLog log = run(short_config());
  // One record every log_decimation steps plus the final sample.
  CHECK(log.records.size() == 601);
  CHECK(log.records.back().t == doctest::Approx(3.0));
  CHECK(trajectory_header(2, 4).rfind("t,p1,p2,q1,q2,p_hat1", 0) == 0);
  // Nothing is recorded before the first full window.
  for (const auto& e : log.events) CHECK(e.time >= 0.8 - 1e-9);
  CHECK(log.summary.steps_completed == 6000);
}

TEST_CASE("estimation side never moves before data exists") {
  RunConfig cfg;
  cfg.duration = 0.8;
  const RunLog log = run(cfg);
  for (const auto& r : log.records) CHECK(norm(r.theta_hat) == 0.0);
}

TEST_CASE("initial main stack: zero by default, optionally full rank") {
  RunConfig cfg;
  cfg.duration = 0.1;
  const RunLog cold = run(cfg);
  CHECK(cold.records.front().smin_main == 0.0);

  cfg.init_stack_full_rank = true;
  const RunLog warm = run(cfg);
  CHECK(warm.records.front().smin_main > cfg.c_lower);
  // The synthetic points carry zero targets, so they pull theta_hat toward zero
  // and leave it there when it starts there.
  CHECK(norm(warm.records.back().theta_hat) == 0.0);
}
