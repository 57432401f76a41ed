#include "bellpair/rng.hpp"

#include <cmath>
#include <numbers>

namespace bellpair {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

std::uint64_t Rng::derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform01(); }

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller on explicit uniforms; u1 shifted into (0, 1].
  const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

cdouble Rng::cgaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

Vec3 Rng::unit_vector() {
  for (;;) {
    const Vec3 v{gaussian(), gaussian(), gaussian()};
    const double n = norm(v);
    if (n > 1e-12) return {v[0] / n, v[1] / n, v[2] / n};
  }
}

std::array<double, 4> Rng::simplex4() {
  std::array<double, 4> w{};
  double total = 0;
  for (double& x : w) {
    const double u = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    x = -std::log(u);
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

}  // namespace bellpair
