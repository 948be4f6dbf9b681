#pragma once

#include <cstdint>
#include <stdexcept>

namespace padiq {

/// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

/// Prime context: the prime p plus a default digit depth used by oracles
/// and digit displays. Construction validates primality.
struct PrimeCtx {
  long p;
  int depth;

  explicit PrimeCtx(long prime, int default_depth = 24) : p(prime), depth(default_depth) {
    if (prime < 2 || !is_prime_u64(static_cast<std::uint64_t>(prime)))
      throw std::invalid_argument("PrimeCtx: p must be prime");
    if (default_depth < 1) throw std::invalid_argument("PrimeCtx: depth must be positive");
  }
};

}  // namespace padiq
