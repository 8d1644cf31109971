#include "clobs/signal_windows.hpp"

#include <algorithm>
#include <vector>

namespace clobs {

std::size_t whole_multiple(double value, double unit, const char* what) {
  const double ratio = value / unit;
  const double rounded = std::round(ratio);
  if (!(rounded >= 0.0) || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded)) {
    throw std::invalid_argument(std::string(what) + " = " + std::to_string(value) +
                                " is not a whole multiple of the sample period " +
                                std::to_string(unit));
  }
  return static_cast<std::size_t>(rounded);
}

WindowConfig::WindowConfig(double tau1, double tau2, double start_time, double sample_period)
    : tau1_(tau1), tau2_(tau2), start_time_(start_time), sample_period_(sample_period) {
  if (!(sample_period > 0.0)) throw std::invalid_argument("WindowConfig: sample_period <= 0");
  if (!(tau1 > 0.0) || !(tau2 > 0.0)) {
    throw std::invalid_argument("WindowConfig: tau1 and tau2 must be positive");
  }
  inner_steps_ = whole_multiple(tau1, sample_period, "tau1");
  outer_steps_ = whole_multiple(tau2, sample_period, "tau2");
}

bool WindowConfig::window_available(double t) const {
  return t >= start_time_ + tau1_ + tau2_ - 1e-9 * sample_period_;
}

namespace {

template <class Value>
Value zero_like(const Value& v) {
  return v * 0.0;
}

// First index of the window ending at t.
template <class Value>
std::size_t window_start(const SignalBuffer<Value>& buf, double t, const WindowConfig& cfg,
                         std::size_t* end) {
  *end = buf.index_of(t);
  const std::size_t span = cfg.inner_steps() + cfg.outer_steps();
  if (*end < span) {
    throw InsufficientHistoryError("window at t=" + std::to_string(t) +
                                   " reaches before the oldest buffered sample");
  }
  return *end - span;
}

template <class Value>
Value double_integral_impl(const SignalBuffer<Value>& buf, double t, const WindowConfig& cfg) {
  if (buf.empty()) throw InsufficientHistoryError("double_integral: buffer is empty");
  if (!cfg.window_available(t)) return zero_like(buf.back());

  std::size_t end = 0;
  const std::size_t start = window_start(buf, t, cfg, &end);
  const std::size_t n1 = cfg.inner_steps();
  const std::size_t n2 = cfg.outer_steps();
  const double h = cfg.sample_period();

  // cumulative[i] = trapezoid integral from the window start to sample i.
  // The inner integral ending at outer node j is then a difference of two
  // cumulative values, which is the same trapezoid sum evaluated per node.
  std::vector<Value> cumulative;
  cumulative.reserve(end - start + 1);
  cumulative.push_back(zero_like(buf.at_index(start)));
  for (std::size_t i = start + 1; i <= end; ++i) {
    Value step = buf.at_index(i - 1) + buf.at_index(i);
    step *= 0.5 * h;
    cumulative.push_back(cumulative.back() + step);
  }

  Value outer = zero_like(buf.back());
  for (std::size_t j = 0; j <= n2; ++j) {
    Value inner = cumulative[j + n1] - cumulative[j];
    const double weight = (j == 0 || j == n2) ? 0.5 * h : h;
    inner *= weight;
    outer += inner;
  }
  return outer;
}

}  // namespace

Vec window_position_delta(const SignalBuffer<Vec>& p_buf, double t, const WindowConfig& cfg) {
  if (p_buf.empty()) throw InsufficientHistoryError("window_position_delta: buffer is empty");
  if (!cfg.window_available(t)) return zero_like(p_buf.back());

  std::size_t end = 0;
  const std::size_t start = window_start(p_buf, t, cfg, &end);
  const Vec& p_now = p_buf.at_index(end);
  const Vec& p_minus_tau1 = p_buf.at_index(end - cfg.inner_steps());
  const Vec& p_minus_tau2 = p_buf.at_index(end - cfg.outer_steps());
  const Vec& p_minus_both = p_buf.at_index(start);
  return (p_minus_both - p_minus_tau1) + (p_now - p_minus_tau2);
}

Vec double_integral(const SignalBuffer<Vec>& buf, double t, const WindowConfig& cfg) {
  return double_integral_impl(buf, t, cfg);
}

Mat double_integral(const SignalBuffer<Mat>& buf, double t, const WindowConfig& cfg) {
  return double_integral_impl(buf, t, cfg);
}

Triplet compute_triplet(const SignalBuffer<Vec>& p_buf, const SignalBuffer<Mat>& regressor_buf,
                        const SignalBuffer<Vec>& f0_buf, double t, const WindowConfig& cfg) {
  return Triplet{window_position_delta(p_buf, t, cfg), double_integral(f0_buf, t, cfg),
                 double_integral(regressor_buf, t, cfg)};
}

}  // namespace clobs
