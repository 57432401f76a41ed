#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "bellpair/matrix.hpp"

namespace bellpair {

// Seedable generator used by every sampler. Uniform doubles are produced by
// an explicit bit mapping (not std::uniform_real_distribution), so a given
// seed yields the same stream on any conforming platform.
//
// Stream splitting: sub-stream k of master seed s is seeded with
//     splitmix64(splitmix64(s) ^ (k + 1) * 0x9E3779B97F4A7C15)
// Parallel sweeps give sample k its own sub-stream, which makes the result
// independent of the thread count and schedule.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(derive_seed(seed, index));
  }

  std::uint64_t next() { return engine_(); }

  double uniform01();                  // [0, 1)
  double uniform(double a, double b);  // [a, b)
  double gaussian();                   // N(0, 1)
  cdouble cgaussian();                 // re, im independent N(0, 1)

  Vec3 unit_vector();
  std::array<double, 4> simplex4();  // uniform on the probability simplex

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0;
};

}  // namespace bellpair
