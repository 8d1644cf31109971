#include "clobs/observer.hpp"

#include <stdexcept>

namespace clobs {

void ObserverGains::validate() const {
  if (!(alpha > 0.0) || !(k > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("observer gains alpha, k, beta must be positive");
  }
}

ObserverState ObserverState::initial(const Vec& p_measured) {
  return initial(p_measured, Vec(p_measured.size()));
}

ObserverState ObserverState::initial(const Vec& p_hat, const Vec& q_hat) {
  if (p_hat.size() != q_hat.size()) {
    throw DimensionError("ObserverState: p_hat and q_hat sizes differ");
  }
  const std::size_t n = p_hat.size();
  return ObserverState{p_hat, q_hat, Vec(n), Vec(n)};
}

Vec feedback_nu(const Vec& p_tilde, const Vec& eta, const ObserverGains& gains) {
  return gains.alpha * gains.alpha * p_tilde - (gains.k + gains.alpha + gains.beta) * eta;
}

Vec eta_update(const Vec& p_tilde, ObserverState& state, const ObserverGains& gains, double dt) {
  state.eta = -state.eta_integral - (gains.k + gains.alpha) * p_tilde;
  state.eta_integral +=
      dt * ((gains.beta + gains.k) * state.eta + gains.k * gains.alpha * p_tilde);
  return state.eta;
}

ObserverState observer_step(ObserverState state, const Vec& p_measured, const Vec& u,
                            const Vec& theta_hat, const DynamicsModel& model,
                            const ObserverGains& gains, double dt) {
  if (dt < 0.0) throw std::invalid_argument("observer_step: negative dt");
  if (dt == 0.0) return state;

  const Vec p_tilde = p_measured - state.p_hat;
  eta_update(p_tilde, state, gains, dt);
  const Vec nu = feedback_nu(p_tilde, state.eta, gains);

  const Vec x_hat = state.x_hat();
  const Vec q_hat_dot = model.acceleration(x_hat, u, theta_hat) + nu;
  state.p_hat += dt * state.q_hat;
  state.q_hat += dt * q_hat_dot;
  return state;
}

}  // namespace clobs
