#include "clobs/manipulator.hpp"

#include <cmath>

namespace clobs {

namespace {

Mat inverse_2x2(const Mat& m) {
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (std::abs(det) < 1e-12) throw SingularMatrixError("manipulator: singular mass matrix");
  return Mat{{m(1, 1) / det, -m(0, 1) / det}, {-m(1, 0) / det, m(0, 0) / det}};
}

void require_dim(const Vec& v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw DimensionError(std::string(what) + ": expected size " + std::to_string(n) + ", got " +
                         std::to_string(v.size()));
  }
}

}  // namespace

Mat manipulator_mass(const Vec& p, const ManipulatorParams& params) {
  require_dim(p, 2, "manipulator_mass");
  const double c2 = std::cos(p[1]);
  const double off = params.a2 + params.a3 * c2;
  return Mat{{params.a1 + 2.0 * params.a3 * c2, off}, {off, params.a2}};
}

Mat manipulator_coriolis(const Vec& p, const Vec& q, const ManipulatorParams& params) {
  require_dim(p, 2, "manipulator_coriolis");
  require_dim(q, 2, "manipulator_coriolis");
  const double s2 = params.a3 * std::sin(p[1]);
  return Mat{{-s2 * q[1], -s2 * (q[0] + q[1])}, {s2 * q[0], 0.0}};
}

Mat friction_basis(const Vec& q) {
  require_dim(q, 2, "friction_basis");
  return Mat{{std::tanh(q[0]), q[0], 0.0, 0.0}, {0.0, 0.0, std::tanh(q[1]), q[1]}};
}

Mat manipulator_regressor(const Vec& x, const Vec& /*u*/, const ManipulatorParams& params) {
  require_dim(x, 4, "manipulator_regressor");
  const Mat m_inv = inverse_2x2(manipulator_mass(segment(x, 0, 2), params));
  return -1.0 * (m_inv * friction_basis(segment(x, 2, 2))).transpose();
}

Vec TwoLinkManipulator::known_dynamics(const Vec& x, const Vec& u) const {
  require_dim(x, 4, "known_dynamics");
  require_dim(u, 2, "known_dynamics");
  const Vec p = segment(x, 0, 2);
  const Vec q = segment(x, 2, 2);
  const Mat m_inv = inverse_2x2(manipulator_mass(p, params_));
  return m_inv * (u - manipulator_coriolis(p, q, params_) * q);
}

Mat TwoLinkManipulator::regressor(const Vec& x, const Vec& u) const {
  return manipulator_regressor(x, u, params_);
}

Vec ReferenceTrajectory::position(double t) const {
  const double v = std::sin(3.0 * t) + std::sin(2.0 * t);
  return Vec{v, v};
}

Vec ReferenceTrajectory::velocity(double t) const {
  const double v = 3.0 * std::cos(3.0 * t) + 2.0 * std::cos(2.0 * t);
  return Vec{v, v};
}

Vec ReferenceTrajectory::acceleration(double t) const {
  const double v = -9.0 * std::sin(3.0 * t) - 4.0 * std::sin(2.0 * t);
  return Vec{v, v};
}

Vec pd_tracking_controller(const Vec& x, double t, const TrackingGains& gains,
                           const ManipulatorParams& params, const Vec& theta_true) {
  require_dim(x, 4, "pd_tracking_controller");
  const Vec p = segment(x, 0, 2);
  const Vec q = segment(x, 2, 2);
  const ReferenceTrajectory ref;
  const Vec commanded = ref.acceleration(t) + gains.kd * (ref.velocity(t) - q) +
                        gains.kp * (ref.position(t) - p);
  return manipulator_mass(p, params) * commanded + manipulator_coriolis(p, q, params) * q +
         friction_basis(q) * theta_true;
}

}  // namespace clobs
