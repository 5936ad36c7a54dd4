#pragma once

#include <cstdint>

namespace stgc {

__extension__ typedef unsigned __int128 uint128_t;

/// PCG-XSL-RR 128/64 (O'Neill 2014) with selectable stream.
///
/// The integer sequence for a given (seed, stream) is identical on every
/// platform. Real-valued draws are built only from that sequence plus
/// IEEE-754 arithmetic, std::log and std::sqrt, so they are reproducible
/// wherever those are correctly rounded (glibc, musl, MSVC).
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on (0, 1).
  double uniform_open() noexcept;
  /// Uniform integer on [0, n); n > 0.
  std::uint64_t uniform_index(std::uint64_t n) noexcept;
  /// Standard normal (Marsaglia polar method).
  double normal() noexcept;
  /// Gamma(shape, scale = 1) (Marsaglia-Tsang).
  double gamma(double shape) noexcept;
  double beta(double a, double b) noexcept;

 private:
  uint128_t state_;
  uint128_t inc_;
  double spare_ = 0.0;
  bool has_spare_ = false;

  void step() noexcept;
};

/// Independent reproducible stream for (seed, stream).
[[nodiscard]] inline Rng seeded_rng(std::uint64_t seed, std::uint64_t stream) noexcept {
  return Rng(seed, stream);
}

/// SplitMix64 finalizer; used to derive child seeds from (seed, index).
[[nodiscard]] std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace stgc
