#pragma once

#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "padiq/prime.hpp"
#include "padiq/rational.hpp"

namespace padiq {

/// p-adic valuation of a nonzero rational; nullopt encodes +infinity (x == 0).
std::optional<long> valuation(const Q& x, long p);

/// Valuation restricted to nonzero inputs.
long valuation_nonzero(const Q& x, long p);

/// |x|_p as an exact rational p^(-v); |0|_p = 0.
Q padic_norm(const Q& x, long p);

/// x = p^k * u with u a p-adic unit; returns (k, u). x must be nonzero.
std::pair<long, Q> unit_split(const Q& x, long p);

/// Fractional part: the canonical representative of x mod Zp inside
/// Z[1/p] intersected with [0,1) (sum of the digits at negative positions).
Q frac_part(const Q& x, long p);

/// First `count` digits of the unit part: x = p^k (d0 + d1 p + ...), d0 != 0.
/// Returns (k, digits). x must be nonzero.
std::pair<long, std::vector<int>> digits(const Q& x, long p, int count);

/// Residue of a p-adic integer (den coprime to p) modulo p^k, in [0, p^k).
Z residue_mod_pk(const Q& x, long p, int k);

/// Legendre symbol (a/p) for odd p; a may be any integer, result in {-1,0,1}.
int legendre(const Z& a, long p);

/// Square class of a nonzero rational in Qp^x / (Qp^x)^2, encoded as
/// valuation parity plus a canonical unit representative: for odd p, 1 or the
/// least positive non-residue; for p = 2, the unit's residue mod 8.
struct SquareClass {
  int parity;    // 0 or 1
  long unit_rep; // odd p: 1 or least non-residue; p = 2: 1,3,5,7

  friend bool operator==(const SquareClass&, const SquareClass&) = default;
};

SquareClass square_class(const Q& x, long p);

/// True when x is a square in Qp^x.
bool is_padic_square(const Q& x, long p);

/// Least positive quadratic non-residue mod odd p.
long least_nonresidue(long p);

/// A rational carrying its prime context; thin convenience wrapper.
struct PadicScalar {
  Q value;
  PrimeCtx ctx;

  PadicScalar(Q v, PrimeCtx c) : value(std::move(v)), ctx(c) {}

  std::optional<long> val() const { return valuation(value, ctx.p); }
  Q norm() const { return padic_norm(value, ctx.p); }
  Q frac() const { return frac_part(value, ctx.p); }
  SquareClass sq_class() const { return square_class(value, ctx.p); }
};

}  // namespace padiq
