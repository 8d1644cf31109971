#include "clobs/estimator.hpp"

#include <cmath>

namespace clobs {

namespace {

constexpr double kDefinitenessSlack = 1e-9;

void check_dims(const EstimatorState& state, const HistoryStack& stack) {
  const std::size_t p = stack.param_count();
  if (state.theta_hat.size() != p || state.gamma.rows() != p || state.gamma.cols() != p) {
    throw DimensionError("estimator: state does not match a stack with " + std::to_string(p) +
                         " parameters");
  }
}

// sum_i G_i (P_i - F_i - G_i^T theta)
Vec stack_correction(const HistoryStack& stack, const Vec& theta) {
  Vec sum(stack.param_count());
  for (const auto& point : stack.points()) {
    const Vec residual = point.P - point.F_hat - point.G_hat.transpose() * theta;
    sum += point.G_hat * residual;
  }
  return sum;
}

}  // namespace

void EstimatorGains::validate() const {
  if (!(k_theta > 0.0)) throw std::invalid_argument("estimator: k_theta must be > 0");
  if (!(beta1 >= 0.0)) throw std::invalid_argument("estimator: beta1 must be >= 0");
  if (!(gamma_min >= 0.0) || !(gamma_min <= gamma_max)) {
    throw std::invalid_argument("estimator: need 0 <= gamma_min <= gamma_max");
  }
}

EstimatorState EstimatorState::initial(std::size_t param_count, double gamma0_scale) {
  if (!(gamma0_scale > 0.0)) throw std::invalid_argument("estimator: gamma0 scale must be > 0");
  return EstimatorState{Vec(param_count), gamma0_scale * Mat::identity(param_count)};
}

Vec theta_dot(const EstimatorState& state, const HistoryStack& stack,
              const EstimatorGains& gains) {
  check_dims(state, stack);
  return gains.k_theta * (state.gamma * stack_correction(stack, state.theta_hat));
}

Mat gamma_dot(const EstimatorState& state, const HistoryStack& stack,
              const EstimatorGains& gains) {
  check_dims(state, stack);
  return gains.beta1 * state.gamma - gains.k_theta * (state.gamma * stack.gram() * state.gamma);
}

EstimatorStep estimator_step(const EstimatorState& state, const HistoryStack& stack,
                             const EstimatorGains& gains, double dt) {
  if (dt < 0.0) throw std::invalid_argument("estimator_step: negative dt");
  EstimatorStep step{state, 0.0, 0.0, false};
  if (dt > 0.0) {
    step.state.theta_hat += dt * theta_dot(state, stack, gains);
    step.state.gamma = symmetrized(state.gamma + dt * gamma_dot(state, stack, gains));
  }

  if (!all_finite(step.state.gamma) || !all_finite(step.state.theta_hat)) {
    throw GainDivergenceError("estimator: non-finite theta_hat or Gamma");
  }
  const Vec eig = symmetric_eigenvalues(step.state.gamma);
  step.gamma_eig_min = eig[0];
  step.gamma_eig_max = eig[eig.size() - 1];
  if (step.gamma_eig_min <= kDefinitenessSlack * frobenius_norm(step.state.gamma)) {
    throw GainDivergenceError("estimator: Gamma lost positive definiteness (min eigenvalue " +
                              std::to_string(step.gamma_eig_min) + ")");
  }
  step.bounds_violated =
      step.gamma_eig_min < gains.gamma_min || step.gamma_eig_max > gains.gamma_max;
  return step;
}

Vec batch_least_squares(const HistoryStack& stack) {
  Vec rhs(stack.param_count());
  for (const auto& point : stack.points()) rhs += point.G_hat * (point.P - point.F_hat);
  return solve_spd(stack.gram(), rhs);
}

}  // namespace clobs
