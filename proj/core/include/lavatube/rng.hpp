#pragma once

#include <array>
#include <cstdint>

namespace lavatube {

/// splitmix64 step; used for seeding and for deriving sub-seeds.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// xoshiro256** seeded through splitmix64. A (seed, stream) pair selects an
/// independent sequence so subsystems sharing one user seed stay decoupled.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform() noexcept;
  /// Uniform integer in [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }

private:
  std::array<std::uint64_t, 4> s_{};
};

/// Well-known stream ids.
namespace streams {
inline constexpr std::uint64_t kTubeMap = 1;
inline constexpr std::uint64_t kGermination = 2;
} // namespace streams

} // namespace lavatube
