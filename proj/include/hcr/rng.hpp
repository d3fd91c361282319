#pragma once

// Counter-based random numbers. Every (seed, path, driver) triple owns an
// independent Philox4x32-10 stream, so a path's noise never depends on
// which worker simulates it or in what order.

#include <array>
#include <cstdint>

namespace hcr {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

/// Standard normal draws for one driving Brownian motion of one path.
/// Counter layout: {block index, driver, path low, path high}; key = seed.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t path, std::uint32_t driver);

  double next();

 private:
  void refill();

  PhiloxCounter counter_;
  PhiloxKey key_;
  std::array<double, 2> cache_{};
  int cached_ = 0;
};

/// Seed of an independent sub-experiment (splitmix64 of seed and tag).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// Uniform in [0, 1) from the top 53 bits of (hi, lo).
double uniform53(std::uint32_t hi, std::uint32_t lo);

}  // namespace hcr
