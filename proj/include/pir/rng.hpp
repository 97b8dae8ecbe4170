#pragma once

#include <cstdint>
#include <random>

namespace pir {

/// Seedable deterministic random stream. All sampling in the library goes
/// through an explicit Rng handle owned by the caller; the sequence for a
/// given seed is stable across platforms (mt19937_64 plus hand-rolled
/// rejection sampling, no std::uniform_int_distribution).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Uniform value in [0, bound). bound must be nonzero.
  std::uint64_t uniform(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace pir
