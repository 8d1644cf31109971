#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "clobs/numerics.hpp"

namespace clobs {

/// Zero-mean Gaussian measurement noise with a platform-independent stream:
/// std::mt19937_64 words are mapped to doubles with 53-bit precision and
/// turned into normals with the Box-Muller transform (both outputs used).
/// std::normal_distribution is avoided because its algorithm is
/// implementation-defined.
class NoiseModel {
 public:
  static constexpr const char* kGeneratorName = "mt19937_64+box-muller";

  NoiseModel(double variance, std::uint64_t seed);

  double variance() const { return variance_; }
  std::uint64_t seed() const { return seed_; }

  /// One standard normal draw.
  double standard_normal();

 private:
  double uniform_open();

  double variance_;
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// p_true + w, w ~ N(0, variance I). Variance 0 returns p_true untouched and
/// does not advance the stream.
Vec measure(const Vec& p_true, NoiseModel& noise);

}  // namespace clobs
