#pragma once

#include <complex>
#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "padiq/characters.hpp"
#include "padiq/padic.hpp"

namespace padiq {

/// Product of per-axis balls B(center_i; scale_i), radius p^{-scale_i}.
struct BallDomain {
  std::vector<Q> center;
  std::vector<int> scale;
};

/// One-dimensional shell |x| = p^nu.
struct ShellDomain {
  long nu;
};

using Domain = std::variant<BallDomain, ShellDomain>;

/// Bounded-domain integrand description for the brute-force oracle.
struct IntegrandSpec {
  enum class Kind { quadratic_character, pure_character, radial_profile };
  Kind kind = Kind::quadratic_character;
  Q a = Q(0);  // quadratic: chi(a x^2 + b x)
  Q b = Q(0);
  Q xi = Q(0);  // pure: chi(xi x)
  std::map<long, ComplexVal> profile;  // radial: f(p^nu) = profile[nu]
  Domain domain = BallDomain{{Q(0)}, {0}};
};

/// Flat sub-ball quadrature: partitions the domain into p^{depth * n}
/// sub-balls, evaluates the integrand at each center in canonical digit
/// order, weights by sub-ball volume, and sums. Exact for integrands that
/// are constant at the refined scale. Throws when the cell count would
/// exceed max_cells.
ComplexVal ball_sum_oracle(const PrimeCtx& ctx, const IntegrandSpec& spec, int truncation_depth,
                           std::size_t max_cells = std::size_t(1) << 26);

/// Generic flat sub-ball sum over a product of balls with a caller-supplied
/// integrand; same partition semantics as ball_sum_oracle.
std::complex<double> ball_sum(const PrimeCtx& ctx, const BallDomain& dom, int depth,
                              const std::function<std::complex<double>(const std::vector<Q>&)>& f,
                              std::size_t max_cells = std::size_t(1) << 26);

/// Evaluation of the fully refined sub-ball sum of chi(a x^2 + b x) over a
/// ball, with certifiably constant or certifiably cancelling sub-trees not
/// materialized. Produces the same value as ball_sum_oracle at sufficient
/// depth, at logarithmic cost.
std::complex<double> quadratic_ball_integral(long p, const Q& a, const Q& b, const Q& center,
                                             int scale);

/// Same over the shell |x| = p^nu.
std::complex<double> quadratic_shell_integral(long p, const Q& a, const Q& b, long nu);

/// integral over all of Qp of chi(a x^2 + b x) dx, a != 0; the truncation
/// radius past which shells vanish is computed from (a, b) and certified by
/// the cancellation rule.
std::complex<double> quadratic_line_integral(long p, const Q& a, const Q& b);

/// Depth making the flat oracle exact for chi(a x^2 + b x) on B(center;
/// scale): past it every sub-ball carries a constant integrand.
int quadratic_constancy_depth(long p, const Q& a, const Q& b, const Q& center, int scale);

}  // namespace padiq
