#pragma once

#include <cstddef>

#include "clobs/numerics.hpp"

namespace clobs {

/// Second-order system p' = q, q' = f0(x, u) + regressor(x, u)^T theta,
/// with x = (p, q). This is the part of the plant the observer and
/// estimator are allowed to see; the true parameters are kept elsewhere.
class DynamicsModel {
 public:
  virtual ~DynamicsModel() = default;

  /// n, the size of each of p and q.
  virtual std::size_t position_dim() const = 0;
  virtual std::size_t input_dim() const = 0;
  /// Number of unknown parameters.
  virtual std::size_t param_count() const = 0;

  /// Known part of the acceleration, length n.
  virtual Vec known_dynamics(const Vec& x, const Vec& u) const = 0;
  /// Regressor, param_count x n.
  virtual Mat regressor(const Vec& x, const Vec& u) const = 0;

  /// f0(x, u) + regressor(x, u)^T theta.
  Vec acceleration(const Vec& x, const Vec& u, const Vec& theta) const {
    return known_dynamics(x, u) + regressor(x, u).transpose() * theta;
  }
};

}  // namespace clobs
