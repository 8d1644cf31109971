#pragma once

// Concurrent-learning parameter estimator with a least-squares gain:
//   theta_hat' = k_theta Gamma sum_i G_i (P_i - F_i - G_i^T theta_hat)
//   Gamma'     = beta1 Gamma - k_theta Gamma gram Gamma

#include <limits>
#include <stdexcept>
#include <string>

#include "clobs/history_stack.hpp"
#include "clobs/numerics.hpp"

namespace clobs {

class GainDivergenceError : public std::runtime_error {
 public:
  explicit GainDivergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct EstimatorGains {
  double k_theta = 0.01;
  double beta1 = 0.5;
  /// Monitor bounds on the eigenvalues of Gamma. Violations are reported,
  /// never corrected.
  double gamma_min = 0.0;
  double gamma_max = std::numeric_limits<double>::infinity();

  void validate() const;
};

struct EstimatorState {
  /// param_count
  Vec theta_hat;
  /// param_count x param_count, symmetric positive definite.
  Mat gamma;

  static EstimatorState initial(std::size_t param_count, double gamma0_scale);
};

Vec theta_dot(const EstimatorState& state, const HistoryStack& stack, const EstimatorGains& gains);
Mat gamma_dot(const EstimatorState& state, const HistoryStack& stack, const EstimatorGains& gains);

struct EstimatorStep {
  EstimatorState state;
  double gamma_eig_min = 0.0;
  double gamma_eig_max = 0.0;
  bool bounds_violated = false;
};

/// Forward-Euler step of both laws, then Gamma <- (Gamma + Gamma^T) / 2 and
/// the eigenvalue monitor. Throws GainDivergenceError if Gamma is no longer
/// positive definite (smallest eigenvalue <= 1e-9 ||Gamma||) or not finite.
EstimatorStep estimator_step(const EstimatorState& state, const HistoryStack& stack,
                             const EstimatorGains& gains, double dt);

/// Normal-equations solution of min sum_i ||P_i - F_i - G_i^T theta||^2.
/// Throws SingularMatrixError when the stack gram is rank deficient.
Vec batch_least_squares(const HistoryStack& stack);

}  // namespace clobs
