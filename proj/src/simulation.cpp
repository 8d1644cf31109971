#include "clobs/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "clobs/estimator.hpp"
#include "clobs/noise.hpp"
#include "clobs/observer.hpp"
#include "clobs/signal_windows.hpp"

namespace clobs {

ClosedLoopPlant::ClosedLoopPlant(ManipulatorParams params, Vec theta_true, TrackingGains gains)
    : model_(params), theta_true_(std::move(theta_true)), gains_(gains) {
  if (theta_true_.size() != model_.param_count()) {
    throw DimensionError("ClosedLoopPlant: theta_true has the wrong size");
  }
}

Vec ClosedLoopPlant::control(const Vec& x, double t) const {
  return pd_tracking_controller(x, t, gains_, model_.params(), theta_true_);
}

Vec ClosedLoopPlant::derivative(const Vec& x, const Vec& u) const {
  return concat(segment(x, 2, 2), model_.acceleration(x, u, theta_true_));
}

Vec ClosedLoopPlant::step_euler(const Vec& x, const Vec& u, double h) const {
  return x + h * derivative(x, u);
}

Vec ClosedLoopPlant::step_rk4(const Vec& x, double t, double h) const {
  auto f = [&](const Vec& xs, double ts) { return derivative(xs, control(xs, ts)); };
  const Vec k1 = f(x, t);
  const Vec k2 = f(x + (0.5 * h) * k1, t + 0.5 * h);
  const Vec k3 = f(x + (0.5 * h) * k2, t + 0.5 * h);
  const Vec k4 = f(x + h * k3, t + h);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

// Full-rank stand-in for an a-priori history stack: point i excites
// parameter i mod p through the first state channel and carries no target.
HistoryStack synthetic_full_rank_stack(std::size_t capacity, std::size_t param_count,
                                       std::size_t n) {
  HistoryStack stack(capacity, param_count, n);
  for (std::size_t i = 0; i < capacity; ++i) {
    Mat g(param_count, n);
    g(i % param_count, 0) = 1.0;
    stack.try_insert(DataPoint{Vec(n), Vec(n), g, 0.0}, 0.0);
  }
  return stack;
}

}  // namespace

RunLog run(const RunConfig& config) {
  config.validate();

  RunLog log;
  log.metadata.emplace_back("version", kVersion);
  log.metadata.emplace_back("noise_generator", NoiseModel::kGeneratorName);
  for (auto& entry : config.entries()) log.metadata.push_back(std::move(entry));

  const double h = config.sample_period;
  const std::size_t steps = whole_multiple(config.duration, h, "duration");
  if (steps == 0) return log;

  const ClosedLoopPlant plant(ManipulatorParams{}, ManipulatorParams::true_friction(),
                              TrackingGains{config.kp, config.kd});
  const DynamicsModel& model = plant.model();
  const std::size_t n = model.position_dim();
  const std::size_t p = model.param_count();

  const WindowConfig window(config.tau1, config.tau2, 0.0, h);
  SignalBuffer<Vec> p_buf(window);
  SignalBuffer<Vec> f0_buf(window);
  SignalBuffer<Mat> regressor_buf(window);

  PurgeSettings purge_settings;
  purge_settings.window_deadtime = config.tau1 + config.tau2;
  purge_settings.dwell_time = config.resolved_dwell_time();
  purge_settings.xi = config.xi;
  purge_settings.zeta = config.zeta;
  purge_settings.c_lower = config.c_lower;
  purge_settings.start_time = 0.0;
  purge_settings.require_full_transient = config.purge_requires_full_stack;
  HistoryStack initial_main =
      config.init_stack_full_rank
          ? synthetic_full_rank_stack(config.stack_capacity, p, n)
          : HistoryStack::zero_filled(config.stack_capacity, p, n);
  PurgeController purge(std::move(initial_main), config.stack_capacity, purge_settings);

  const ObserverGains observer_gains{config.alpha, config.k, config.beta};
  EstimatorGains estimator_gains;
  estimator_gains.k_theta = config.resolved_k_theta();
  estimator_gains.beta1 = config.beta1;
  estimator_gains.gamma_min = config.gamma_min;
  estimator_gains.gamma_max = config.gamma_max;
  estimator_gains.validate();

  NoiseModel noise(config.noise_variance, config.seed);
  EstimatorState estimator = EstimatorState::initial(p, config.gamma0_scale);
  const Vec theta_true = plant.theta_true();
  const ReferenceTrajectory reference;

  const std::size_t candidate_stride = whole_multiple(config.candidate_period, h, "candidate_period");

  Vec x(2 * n);
  std::optional<ObserverState> observer;
  RunSummary& summary = log.summary;
  summary.gamma_eig_min_seen = summary.gamma_eig_max_seen = config.gamma0_scale;

  try {
    for (std::size_t k = 0;; ++k) {
      const double t = static_cast<double>(k) * h;
      const Vec u = plant.control(x, t);
      const Vec p_true = segment(x, 0, n);
      const Vec y = measure(p_true, noise);
      if (!observer) observer = ObserverState::initial(y);

      const Vec x_hat = observer->x_hat();
      p_buf.push(t, y);
      f0_buf.push(t, model.known_dynamics(x_hat, u));
      regressor_buf.push(t, model.regressor(x_hat, u));

      if (k % candidate_stride == 0 && window.window_available(t)) {
        const Triplet triplet = compute_triplet(p_buf, regressor_buf, f0_buf, t, window);
        PurgeTick tick =
            purge.tick(t, DataPoint{triplet.P, triplet.F_hat, triplet.G_hat, t});
        for (auto& e : tick.events) log.events.push_back(e);
        if (tick.purged) {
          ++summary.purge_count;
          if (config.gamma_reset_on_purge) {
            estimator.gamma = config.gamma0_scale * Mat::identity(p);
          }
        }
      }

      const Vec x_tilde = x - x_hat;
      const double x_tilde_norm = norm(x_tilde);
      const double theta_tilde_norm = norm(theta_true - estimator.theta_hat);
      summary.max_input_norm = std::max(summary.max_input_norm, norm(u));
      if (t >= 2.0) {
        summary.max_tracking_error_after_2s = std::max(summary.max_tracking_error_after_2s,
                                                       norm(p_true - reference.position(t)));
      }
      summary.final_theta_tilde_norm = theta_tilde_norm;
      summary.final_x_tilde_norm = x_tilde_norm;

      if (k % config.log_decimation == 0 || k == steps) {
        const Vec gamma_eig = symmetric_eigenvalues(estimator.gamma);
        log.records.push_back(TrajectoryRecord{
            t, p_true, segment(x, n, n), observer->p_hat, observer->q_hat, estimator.theta_hat,
            x_tilde_norm, theta_tilde_norm, purge.main().min_singular_value(),
            purge.transient().min_singular_value(), gamma_eig[0], gamma_eig[p - 1], u});
      }
      if (k == steps) break;

      observer = observer_step(*observer, y, u, estimator.theta_hat, model, observer_gains, h);
      const EstimatorStep est = estimator_step(estimator, purge.main(), estimator_gains, h);
      estimator = est.state;
      summary.gamma_eig_min_seen = std::min(summary.gamma_eig_min_seen, est.gamma_eig_min);
      summary.gamma_eig_max_seen = std::max(summary.gamma_eig_max_seen, est.gamma_eig_max);
      if (est.bounds_violated) ++summary.gamma_bound_violations;

      x = config.truth_integrator == TruthIntegrator::kEuler ? plant.step_euler(x, u, h)
                                                             : plant.step_rk4(x, t, h);
      summary.steps_completed = k + 1;
    }
  } catch (const GainDivergenceError& e) {
    log.completed = false;
    log.diagnostic = e.what();
  } catch (const InsufficientHistoryError& e) {
    log.completed = false;
    log.diagnostic = e.what();
  } catch (const SingularMatrixError& e) {
    log.completed = false;
    log.diagnostic = e.what();
  }
  return log;
}

}  // namespace clobs
