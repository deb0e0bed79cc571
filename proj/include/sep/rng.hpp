#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace sep {

/// Seeded generator with a platform-independent output sequence.
///
/// The engine is std::mt19937_64, whose output is fixed by the standard.
/// Standard distributions are not (their algorithms are implementation
/// defined), so bounded draws use Lemire's multiply-shift rejection here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
    auto [high, low] = mul_wide(next(), bound);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) std::tie(high, low) = mul_wide(next(), bound);
    }
    return high;
  }

  /// Uniform integer in [lo, hi].
  int between(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("Rng::between: empty range");
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool chance(std::uint64_t numerator, std::uint64_t denominator) {
    return below(denominator) < numerator;
  }

 private:
  // Full 128-bit product as (high, low) words.
  static std::pair<std::uint64_t, std::uint64_t> mul_wide(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t a_lo = a & 0xFFFFFFFFu, a_hi = a >> 32;
    const std::uint64_t b_lo = b & 0xFFFFFFFFu, b_hi = b >> 32;
    const std::uint64_t ll = a_lo * b_lo;
    const std::uint64_t lh = a_lo * b_hi;
    const std::uint64_t hl = a_hi * b_lo;
    const std::uint64_t hh = a_hi * b_hi;
    const std::uint64_t mid = (ll >> 32) + (lh & 0xFFFFFFFFu) + (hl & 0xFFFFFFFFu);
    const std::uint64_t high = hh + (lh >> 32) + (hl >> 32) + (mid >> 32);
    const std::uint64_t low = (mid << 32) | (ll & 0xFFFFFFFFu);
    return {high, low};
  }

  std::mt19937_64 engine_;
};

}  // namespace sep
