#pragma once

// Fixed-step closed-loop simulation: manipulator truth, noisy position
// measurement, observer, windowed data recording with purging, and the
// concurrent-learning estimator.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "clobs/history_stack.hpp"
#include "clobs/manipulator.hpp"
#include "clobs/numerics.hpp"
#include "clobs/run_config.hpp"

namespace clobs {

inline constexpr const char* kVersion = "0.1.0";

/// Plant-side truth: dynamics, true parameters and the tracking controller.
/// Nothing on the estimation side holds one of these.
class ClosedLoopPlant {
 public:
  ClosedLoopPlant(ManipulatorParams params, Vec theta_true, TrackingGains gains);

  const TwoLinkManipulator& model() const { return model_; }
  const Vec& theta_true() const { return theta_true_; }

  Vec control(const Vec& x, double t) const;
  /// x' with the given input held.
  Vec derivative(const Vec& x, const Vec& u) const;

  /// Forward Euler with u held over the step.
  Vec step_euler(const Vec& x, const Vec& u, double h) const;
  /// Classical RK4 with the controller evaluated at every stage.
  Vec step_rk4(const Vec& x, double t, double h) const;

 private:
  TwoLinkManipulator model_;
  Vec theta_true_;
  TrackingGains gains_;
};

struct TrajectoryRecord {
  double t = 0.0;
  Vec p;
  Vec q;
  Vec p_hat;
  Vec q_hat;
  Vec theta_hat;
  double x_tilde_norm = 0.0;
  double theta_tilde_norm = 0.0;
  double smin_main = 0.0;
  double smin_transient = 0.0;
  double gamma_eig_min = 0.0;
  double gamma_eig_max = 0.0;
  Vec u;
};

struct RunSummary {
  std::size_t steps_completed = 0;
  std::size_t purge_count = 0;
  std::size_t gamma_bound_violations = 0;
  /// Extremes of the eigenvalues of Gamma over every step.
  double gamma_eig_min_seen = 0.0;
  double gamma_eig_max_seen = 0.0;
  double max_input_norm = 0.0;
  /// max ||p - p_d|| over t >= 2 s.
  double max_tracking_error_after_2s = 0.0;
  double final_theta_tilde_norm = 0.0;
  double final_x_tilde_norm = 0.0;
};

struct RunLog {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<TrajectoryRecord> records;
  std::vector<StackEvent> events;
  RunSummary summary;
  bool completed = true;
  std::string diagnostic;
};

/// Runs one simulation. Deterministic for a fixed config (seed included).
/// Runtime failures (gain divergence, missing history) stop the run and are
/// reported through completed/diagnostic with the partial log kept.
RunLog run(const RunConfig& config);

/// Column header of trajectory.csv.
std::string trajectory_header(std::size_t n, std::size_t param_count);

/// Writes trajectory.csv, events.csv and meta.txt into dir (created if
/// needed).
void write_run_log(const RunLog& log, const std::filesystem::path& dir);

}  // namespace clobs
