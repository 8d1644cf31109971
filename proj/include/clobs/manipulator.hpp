#pragma once

// Planar two-link arm with unknown joint friction. The known part is the
// rigid-body model; the unknown part is static (tanh) plus viscous friction
// at each joint, mapped through the inverse mass matrix.

#include "clobs/dynamics_model.hpp"
#include "clobs/numerics.hpp"

namespace clobs {

struct ManipulatorParams {
  double a1 = 3.473;
  double a2 = 0.196;
  double a3 = 0.242;

  /// (static_1, viscous_1, static_2, viscous_2)
  static Vec true_friction() { return Vec{5.3, 1.1, 8.45, 2.35}; }
};

Mat manipulator_mass(const Vec& p, const ManipulatorParams& params);
Mat manipulator_coriolis(const Vec& p, const Vec& q, const ManipulatorParams& params);
/// Friction basis Y(q), 2x4, so that the friction torque is Y(q) theta.
Mat friction_basis(const Vec& q);
/// Sigma(x, u) = -(M(p)^-1 Y(q))^T, 4x2.
Mat manipulator_regressor(const Vec& x, const Vec& u, const ManipulatorParams& params);

class TwoLinkManipulator final : public DynamicsModel {
 public:
  explicit TwoLinkManipulator(ManipulatorParams params = {}) : params_(params) {}

  std::size_t position_dim() const override { return 2; }
  std::size_t input_dim() const override { return 2; }
  std::size_t param_count() const override { return 4; }

  /// -M^-1 V_m q + M^-1 u
  Vec known_dynamics(const Vec& x, const Vec& u) const override;
  Mat regressor(const Vec& x, const Vec& u) const override;

  const ManipulatorParams& params() const { return params_; }

 private:
  ManipulatorParams params_;
};

/// p1_d(t) = p2_d(t) = sin(3t) + sin(2t)
struct ReferenceTrajectory {
  Vec position(double t) const;
  Vec velocity(double t) const;
  Vec acceleration(double t) const;
};

struct TrackingGains {
  double kp = 100.0;
  double kd = 20.0;
};

/// Computed-torque tracking law. Uses the true friction parameters; the
/// controller lives on the plant side and may know everything.
Vec pd_tracking_controller(const Vec& x, double t, const TrackingGains& gains,
                           const ManipulatorParams& params, const Vec& theta_true);

}  // namespace clobs
