#pragma once

// Output-feedback velocity observer. Only the measured position and the
// input enter; the unmeasured velocity error is replaced by the filter
// signal eta, which is computed from position errors alone.

#include "clobs/dynamics_model.hpp"
#include "clobs/numerics.hpp"

namespace clobs {

struct ObserverGains {
  double alpha = 2.0;
  double k = 10.0;
  double beta = 2.0;

  /// Throws std::invalid_argument unless all gains are strictly positive.
  void validate() const;
};

struct ObserverState {
  Vec p_hat;
  Vec q_hat;
  Vec eta;
  /// Running value of int_{T0}^{t} ((beta + k) eta + k alpha p_tilde).
  Vec eta_integral;

  /// p_hat = first measurement (so p_tilde(T0) = 0), q_hat = 0, eta = 0.
  static ObserverState initial(const Vec& p_measured);
  static ObserverState initial(const Vec& p_hat, const Vec& q_hat);

  Vec x_hat() const { return concat(p_hat, q_hat); }
};

/// nu = alpha^2 p_tilde - (k + alpha + beta) eta
Vec feedback_nu(const Vec& p_tilde, const Vec& eta, const ObserverGains& gains);

/// Integral-form eta filter. Sets state.eta to
///   -eta_integral - (k + alpha) p_tilde
/// for the current sample, then advances eta_integral by one forward-Euler
/// step of (beta + k) eta + k alpha p_tilde. Returns the new eta.
///
/// This matches the differential form eta' = -beta eta - k r - alpha q_tilde
/// only when p_tilde(T0) = 0, which ObserverState::initial(p_measured)
/// guarantees.
Vec eta_update(const Vec& p_tilde, ObserverState& state, const ObserverGains& gains, double dt);

/// One forward-Euler step of
///   p_hat' = q_hat
///   q_hat' = f0(x_hat, u) + regressor(x_hat, u)^T theta_hat + nu
/// with eta refreshed first from the current p_tilde = p_measured - p_hat.
/// dt == 0 returns the state unchanged.
ObserverState observer_step(ObserverState state, const Vec& p_measured, const Vec& u,
                            const Vec& theta_hat, const DynamicsModel& model,
                            const ObserverGains& gains, double dt);

}  // namespace clobs
