#pragma once

#include <map>
#include <string>

#include "padiq/padic.hpp"
#include "padiq/phase.hpp"

namespace padiq {

/// Additive character chi_u(x) = e^{2 pi i [u x]} as an exact phase.
inline Phase character(const Q& u, const Q& x, long p) { return Phase(frac_part(u * x, p)); }

/// Gauss factor lambda_p(a) of the quadratic character integral:
/// integral over Qp of chi(a x^2) dx = lambda_p(a) / sqrt(|a|_p).
/// Odd p: 1 when val(a) even; (a0/p) resp. i (a0/p) when val(a) odd and
/// p = 1 resp. 3 (mod 4). p = 2: 1 + (-1)^{a1} i for even valuation and
/// (-1)^{a1+a2} (1 + (-1)^{a1} i) for odd, so |lambda_2| = sqrt(2).
ComplexVal lambda_factor(const Q& a, long p);

/// Which table row produced lambda_factor(a); for reporting.
std::string lambda_case(const Q& a, long p);

/// lambda_p(a) / |lambda_p(a)|.
ComplexVal lambda_normalized(const Q& a, long p);

/// integral over Qp of chi(a x^2 + b x) dx
///   = lambda_p(a) |a|_p^{-1/2} chi(-b^2 / 4a),  a != 0.
ComplexVal gauss_integral(const Q& a, const Q& b, long p);

/// integral over |x| = p^nu of chi(xi x) dx: p^nu (1 - 1/p) when
/// |xi| <= p^{-nu}; -p^{nu-1} when |xi| = p^{-nu+1}; 0 otherwise.
ComplexVal shell_integral(const Q& xi, long nu, long p);

/// integral over Qp of f(|x|) chi(xi x) dx for a finitely supported radial
/// profile f(p^nu) = profile[nu]; xi != 0.
ComplexVal radial_transform(const std::map<long, ComplexVal>& profile, const Q& xi, long p);

/// C = |4|_p lambda_p(1/4) lambda_p(-1/4), with the unit-circle volume
/// normalized to 1: equals 1 for odd p and 1/2 for p = 2.
ComplexVal constant_c(long p);

}  // namespace padiq
