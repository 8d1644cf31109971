#pragma once

// Run configuration for the simulation harness. The file format is flat
// `key = value` lines with `#` comments; unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clobs {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class TruthIntegrator { kEuler, kRk4 };

struct RunConfig {
  // Window lengths and recording.
  double tau1 = 0.5;
  double tau2 = 0.3;
  std::size_t stack_capacity = 50;
  double candidate_period = 0.05;

  // Estimator.
  double gamma0_scale = 1.0;
  double beta1 = 0.5;
  /// Defaults to 0.5 / stack_capacity.
  std::optional<double> k_theta;
  double gamma_min = 0.0;
  double gamma_max = 1e12;
  bool gamma_reset_on_purge = false;

  // Observer.
  double alpha = 2.0;
  double k = 10.0;
  double beta = 2.0;

  // Purging.
  double zeta = 0.0;
  double xi = 0.95;
  /// Defaults to 2 (tau1 + tau2).
  std::optional<double> dwell_time;
  double c_lower = 1e-4;
  bool init_stack_full_rank = false;
  bool purge_requires_full_stack = false;

  // Plant and simulation.
  double sample_period = 5e-4;
  double duration = 30.0;
  double noise_variance = 0.0;
  std::uint64_t seed = 1;
  double kp = 100.0;
  double kd = 20.0;
  TruthIntegrator truth_integrator = TruthIntegrator::kEuler;
  std::size_t log_decimation = 10;

  double resolved_k_theta() const;
  double resolved_dwell_time() const;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;

  /// Sets one key from its textual value. Throws ConfigError on unknown keys
  /// or unparsable values.
  void set(std::string_view key, std::string_view value);

  /// Canonical `key = value` lines with defaults resolved.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

/// Parses config text on top of the defaults.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Shortest decimal that round-trips to the same double.
std::string format_number(double v);

}  // namespace clobs
