#pragma once

// Sliding sample buffers and the windowed quadratures that turn them into
// the (P, F_hat, G_hat) data used by the parameter estimator.

#include <cmath>
#include <cstddef>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>

#include "clobs/numerics.hpp"

namespace clobs {

class InsufficientHistoryError : public std::runtime_error {
 public:
  explicit InsufficientHistoryError(const std::string& what) : std::runtime_error(what) {}
};

/// Integration window lengths tau1 (inner) and tau2 (outer), both whole
/// multiples of the sample period so that every window edge is a grid node.
class WindowConfig {
 public:
  WindowConfig(double tau1, double tau2, double start_time, double sample_period);

  double tau1() const { return tau1_; }
  double tau2() const { return tau2_; }
  double start_time() const { return start_time_; }
  double sample_period() const { return sample_period_; }
  std::size_t inner_steps() const { return inner_steps_; }
  std::size_t outer_steps() const { return outer_steps_; }
  /// Samples needed to cover [t - tau1 - tau2, t].
  std::size_t buffer_capacity() const { return inner_steps_ + outer_steps_ + 1; }

  /// True once t >= T0 + tau1 + tau2, the first time a full window exists.
  bool window_available(double t) const;

 private:
  double tau1_;
  double tau2_;
  double start_time_;
  double sample_period_;
  std::size_t inner_steps_;
  std::size_t outer_steps_;
};

/// Returns the integer n with value == n * unit (within 1e-9 relative), or
/// throws std::invalid_argument naming `what`.
std::size_t whole_multiple(double value, double unit, const char* what);

/// Fixed-capacity, uniformly sampled history of a signal. Oldest samples are
/// evicted first. Value is Vec or Mat.
template <class Value>
class SignalBuffer {
 public:
  SignalBuffer(double sample_period, std::size_t capacity)
      : sample_period_(sample_period), capacity_(capacity) {
    if (!(sample_period > 0.0)) throw std::invalid_argument("SignalBuffer: sample period <= 0");
    if (capacity == 0) throw std::invalid_argument("SignalBuffer: capacity is zero");
  }

  explicit SignalBuffer(const WindowConfig& cfg)
      : SignalBuffer(cfg.sample_period(), cfg.buffer_capacity()) {}

  double sample_period() const { return sample_period_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  double front_time() const { return samples_.front().first; }
  double back_time() const { return samples_.back().first; }
  const Value& back() const { return samples_.back().second; }

  void push(double t, Value v) {
    if (!samples_.empty()) {
      const double gap = t - samples_.back().first;
      if (std::abs(gap - sample_period_) > kGapTol) {
        throw std::invalid_argument("SignalBuffer: sample at t=" + std::to_string(t) +
                                    " breaks the uniform grid");
      }
    }
    if (samples_.size() == capacity_) samples_.pop_front();
    samples_.emplace_back(t, std::move(v));
  }

  /// Index of the sample stamped t, or throws InsufficientHistoryError.
  std::size_t index_of(double t) const {
    if (samples_.empty()) throw InsufficientHistoryError("SignalBuffer: buffer is empty");
    const double offset = (t - front_time()) / sample_period_;
    const double rounded = std::round(offset);
    if (rounded < 0.0 || rounded >= static_cast<double>(samples_.size()) ||
        std::abs(offset - rounded) > 1e-6) {
      throw InsufficientHistoryError("SignalBuffer: no sample at t=" + std::to_string(t) +
                                     " (covered [" + std::to_string(front_time()) + ", " +
                                     std::to_string(back_time()) + "])");
    }
    return static_cast<std::size_t>(rounded);
  }

  const Value& at_index(std::size_t i) const { return samples_[i].second; }
  const Value& at(double t) const { return samples_[index_of(t)].second; }

 private:
  static constexpr double kGapTol = 1e-12;

  double sample_period_;
  std::size_t capacity_;
  std::deque<std::pair<double, Value>> samples_;
};

/// P(t) = p(t - tau2 - tau1) - p(t - tau1) + p(t) - p(t - tau2) once a full
/// window exists, zero before that.
Vec window_position_delta(const SignalBuffer<Vec>& p_buf, double t, const WindowConfig& cfg);

/// Iterated trapezoidal approximation of
///   int_{t-tau2}^{t} int_{lambda-tau1}^{lambda} f(s) ds dlambda
/// from the buffered integrand samples. Zero before a full window exists.
Vec double_integral(const SignalBuffer<Vec>& buf, double t, const WindowConfig& cfg);
Mat double_integral(const SignalBuffer<Mat>& buf, double t, const WindowConfig& cfg);

struct Triplet {
  Vec P;
  Vec F_hat;
  Mat G_hat;
};

/// Builds one candidate data point from time-aligned buffers of measured
/// position, regressor samples and known-dynamics samples.
Triplet compute_triplet(const SignalBuffer<Vec>& p_buf, const SignalBuffer<Mat>& regressor_buf,
                        const SignalBuffer<Vec>& f0_buf, double t, const WindowConfig& cfg);

}  // namespace clobs
