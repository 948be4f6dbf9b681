#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace padiq {

using Z = mpz_class;
using Q = mpq_class;

/// Parse "num" or "num/den" with optional leading sign. Throws on malformed
/// input or zero denominator.
Q parse_rational(const std::string& s);

/// Canonical "num/den" (or "num" when den == 1).
std::string format_rational(const Q& q);

inline bool is_integer(const Q& q) { return q.get_den() == 1; }

inline Q q_of(long num, long den = 1) {
  Q q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace padiq
