#pragma once

// Reproducible random streams. Every trial of an experiment owns an engine
// derived from (master seed, trial index), so results do not depend on how
// trials are distributed over workers.

#include "meander/arith.hpp"

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace meander {

using Engine = std::mt19937_64;

/// Documented default seed for every randomized command.
inline constexpr std::uint64_t kDefaultSeed = 20240229;

inline Engine derive_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Engine(seq);
}

/// Uniform integer in [0, bound) by masked rejection; exact and portable
/// (std::uniform_int_distribution is implementation-defined).
inline std::uint64_t uniform_below(std::uint64_t bound, Engine& engine) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t mask = std::bit_ceil(bound) == 0 ? ~std::uint64_t{0} : std::bit_ceil(bound) - 1;
  for (;;) {
    const std::uint64_t x = engine() & mask;
    if (x < bound) return x;
  }
}

inline BigInt uniform_below(const BigInt& bound, Engine& engine) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: empty range");
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(bound)) + 1;
  const unsigned words = (bits + 63) / 64;
  const unsigned top_bits = bits - 64 * (words - 1);
  const std::uint64_t top_mask = top_bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << top_bits) - 1;
  for (;;) {
    BigInt x = engine() & top_mask;
    for (unsigned w = 1; w < words; ++w) {
      x <<= 64;
      x |= engine();
    }
    if (x < bound) return x;
  }
}

inline bool fair_coin(Engine& engine) { return (engine() >> 63) != 0; }

}  // namespace meander
