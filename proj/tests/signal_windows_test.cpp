#include <doctest.h>

#include <cmath>
#include <functional>

#include "clobs/signal_windows.hpp"

using namespace clobs;

namespace {

// Pushes f(k h) for k = 0..last into a buffer sized for cfg.
SignalBuffer<Vec> sampled(const WindowConfig& cfg, std::size_t last,
                          const std::function<Vec(double)>& f) {
  SignalBuffer<Vec> buf(cfg);
  for (std::size_t k = 0; k <= last; ++k) {
    const double t = static_cast<double>(k) * cfg.sample_period();
    buf.push(t, f(t));
  }
  return buf;
}

double scalar_double_integral(double h, double tau1, double tau2, double t,
                              const std::function<double(double)>& f) {
  const WindowConfig cfg(tau1, tau2, 0.0, h);
  const auto last = whole_multiple(t, h, "t");
  const auto buf = sampled(cfg, last, [&](double s) { return Vec{f(s)}; });
  return double_integral(buf, t, cfg)[0];
}

// int_{t-tau2}^{t} int_{l-tau1}^{l} s^2 ds dl
double square_oracle(double tau1, double tau2, double t) {
  auto antiderivative = [&](double l) { return (std::pow(l, 4) - std::pow(l - tau1, 4)) / 12.0; };
  return antiderivative(t) - antiderivative(t - tau2);
}

// Same integral of s^3.
double cube_oracle(double tau1, double tau2, double t) {
  auto antiderivative = [&](double l) { return (std::pow(l, 5) - std::pow(l - tau1, 5)) / 20.0; };
  return antiderivative(t) - antiderivative(t - tau2);
}

}  // namespace

TEST_CASE("WindowConfig step counts and availability") {
  const WindowConfig cfg(0.5, 0.3, 0.0, 0.01);
  CHECK(cfg.inner_steps() == 50);
  CHECK(cfg.outer_steps() == 30);
  CHECK(cfg.buffer_capacity() == 81);
  CHECK_FALSE(cfg.window_available(0.79));
  CHECK(cfg.window_available(0.8));
  CHECK_THROWS_AS(WindowConfig(0.5, 0.3, 0.0, 0.007), std::invalid_argument);
  CHECK_THROWS_AS(WindowConfig(0.0, 0.3, 0.0, 0.01), std::invalid_argument);
}

TEST_CASE("SignalBuffer enforces the grid and evicts the oldest sample") {
  SignalBuffer<Vec> buf(0.1, 3);
  buf.push(0.0, Vec{0.0});
  CHECK_THROWS_AS(buf.push(0.25, Vec{1.0}), std::invalid_argument);
  buf.push(0.1, Vec{1.0});
  buf.push(0.2, Vec{2.0});
  buf.push(0.30000000000000004, Vec{3.0});
  CHECK(buf.size() == 3);
  CHECK(buf.front_time() == doctest::Approx(0.1));
  CHECK(buf.at(0.2)[0] == 2.0);
  CHECK_THROWS_AS(buf.at(0.0), InsufficientHistoryError);
  CHECK_THROWS_AS(buf.at(0.4), InsufficientHistoryError);
}

TEST_CASE("window_position_delta examples") {
  const WindowConfig cfg(0.5, 0.3, 0.0, 0.01);
  const auto quad = sampled(cfg, 300, [](double t) { return Vec{t * t, 1.0}; });
  // (t-a-b)^2 - (t-a)^2 + t^2 - (t-b)^2 = 2ab
  const Vec P = window_position_delta(quad, 3.0, cfg);
  CHECK(P[0] == doctest::Approx(0.30).epsilon(1e-12));
  CHECK(P[1] == doctest::Approx(0.0));

  const auto linear = sampled(cfg, 300, [](double t) { return Vec{3.0 * t - 1.0}; });
  CHECK(std::abs(window_position_delta(linear, 3.0, cfg)[0]) < 1e-12);
}

TEST_CASE("windowed quantities are zero before a full window exists") {
  const WindowConfig cfg(0.5, 0.3, 0.0, 0.01);
  const auto buf = sampled(cfg, 50, [](double) { return Vec{1.0}; });
  CHECK(window_position_delta(buf, 0.5, cfg)[0] == 0.0);
  CHECK(double_integral(buf, 0.5, cfg)[0] == 0.0);
}

TEST_CASE("missing history is reported") {
  const WindowConfig cfg(0.5, 0.3, 0.0, 0.01);
  const auto buf = sampled(cfg, 200, [](double) { return Vec{1.0}; });
  // Samples stop at t = 2.0, so a window ending at 2.5 cannot be formed.
  CHECK_THROWS_AS(double_integral(buf, 2.5, cfg), InsufficientHistoryError);
  CHECK_THROWS_AS(window_position_delta(buf, 2.5, cfg), InsufficientHistoryError);
}

TEST_CASE("double_integral examples") {
  CHECK(scalar_double_integral(0.01, 0.5, 0.3, 2.0, [](double) { return 1.0; }) ==
        doctest::Approx(0.15).epsilon(1e-12));
  // tau1 (t^2 - (t - tau2)^2) / 2 - tau1^2 tau2 / 2 at t = 1
  CHECK(scalar_double_integral(0.01, 0.5, 0.3, 1.0, [](double s) { return s; }) ==
        doctest::Approx(0.09).epsilon(1e-12));
}

TEST_CASE("double_integral of a quadratic converges at second order") {
  const double t = 2.0;
  const double exact = square_oracle(0.5, 0.3, t);
  const auto f = [](double s) { return s * s; };
  const double e1 = std::abs(scalar_double_integral(0.01, 0.5, 0.3, t, f) - exact);
  const double e2 = std::abs(scalar_double_integral(0.005, 0.5, 0.3, t, f) - exact);
  CHECK(e1 > 0.0);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("double_integral of a cubic matches the closed form") {
  const double exact = cube_oracle(0.5, 0.3, 2.0);
  const double approx = scalar_double_integral(0.001, 0.5, 0.3, 2.0, [](double s) { return s * s * s; });
  CHECK(approx == doctest::Approx(exact).epsilon(1e-5));
}

TEST_CASE("double_integral is linear in the integrand") {
  const WindowConfig cfg(0.2, 0.1, 0.0, 0.01);
  const auto f = [](double s) { return Vec{std::sin(3.0 * s), std::exp(-s)}; };
  const auto g = [](double s) { return Vec{s * s, std::cos(s)}; };
  const double a = 2.5;
  const double b = -0.75;
  const auto bf = sampled(cfg, 100, f);
  const auto bg = sampled(cfg, 100, g);
  const auto bsum = sampled(cfg, 100, [&](double s) { return a * f(s) + b * g(s); });
  const Vec lhs = double_integral(bsum, 1.0, cfg);
  const Vec rhs = a * double_integral(bf, 1.0, cfg) + b * double_integral(bg, 1.0, cfg);
  CHECK(norm(lhs - rhs) < 1e-12);
}

TEST_CASE("matrix double_integral matches entrywise vector integrals") {
  const WindowConfig cfg(0.2, 0.1, 0.0, 0.01);
  SignalBuffer<Mat> mbuf(cfg);
  SignalBuffer<Vec> col0(cfg);
  SignalBuffer<Vec> col1(cfg);
  for (std::size_t k = 0; k <= 100; ++k) {
    const double t = static_cast<double>(k) * 0.01;
    const Mat m{{std::sin(t), t}, {1.0, t * t}, {std::cos(t), -t}};
    mbuf.push(t, m);
    col0.push(t, Vec{m(0, 0), m(1, 0), m(2, 0)});
    col1.push(t, Vec{m(0, 1), m(1, 1), m(2, 1)});
  }
  const Mat im = double_integral(mbuf, 1.0, cfg);
  const Vec i0 = double_integral(col0, 1.0, cfg);
  const Vec i1 = double_integral(col1, 1.0, cfg);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(im(r, 0) == doctest::Approx(i0[r]).epsilon(1e-14));
    CHECK(im(r, 1) == doctest::Approx(i1[r]).epsilon(1e-14));
  }
}

TEST_CASE("compute_triplet satisfies the windowed identity for exact data") {
  // p = t^3 so p'' = 6t = f0 + G^T theta with f0 = 2t, regressor row = t, theta = 4.
  const WindowConfig cfg(0.5, 0.3, 0.0, 0.001);
  SignalBuffer<Vec> p_buf(cfg);
  SignalBuffer<Vec> f0_buf(cfg);
  SignalBuffer<Mat> g_buf(cfg);
  for (std::size_t k = 0; k <= 2000; ++k) {
    const double t = static_cast<double>(k) * 0.001;
    p_buf.push(t, Vec{t * t * t});
    f0_buf.push(t, Vec{2.0 * t});
    g_buf.push(t, Mat{{t}});
  }
  const Triplet tr = compute_triplet(p_buf, g_buf, f0_buf, 2.0, cfg);
  CHECK(tr.P[0] == doctest::Approx(tr.F_hat[0] + 4.0 * tr.G_hat(0, 0)).epsilon(1e-10));
}
