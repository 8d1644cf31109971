#include "clobs/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace clobs {

NoiseModel::NoiseModel(double variance, std::uint64_t seed)
    : variance_(variance), seed_(seed), engine_(seed) {
  if (!(variance >= 0.0) || !std::isfinite(variance)) {
    throw std::invalid_argument("NoiseModel: variance must be finite and >= 0");
  }
}

// Uniform on (0, 1).
double NoiseModel::uniform_open() {
  for (;;) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

double NoiseModel::standard_normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
  const double angle = 2.0 * std::numbers::pi * uniform_open();
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

Vec measure(const Vec& p_true, NoiseModel& noise) {
  if (noise.variance() == 0.0) return p_true;
  const double sigma = std::sqrt(noise.variance());
  Vec out = p_true;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += sigma * noise.standard_normal();
  return out;
}

}  // namespace clobs
