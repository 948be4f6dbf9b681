#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>

#include "padiq/lagrangian.hpp"
#include "padiq/phase.hpp"

namespace padiq {

// Coefficient kappa of the Gaussian phase chi(kappa x^2 / 2) whose
// normalized integral is the index of the line triple. Lines must be
// pairwise distinct; throws std::domain_error("degenerate configuration").
Q maslov_kappa(const LagrangianLine& l1, const LagrangianLine& l2, const LagrangianLine& l3);

// alpha(l1, l2, l3): the integral of chi(kappa x^2 / 2) over the line,
// divided by its modulus. Unit complex number for every prime.
ComplexVal maslov_index(const LagrangianLine& l1, const LagrangianLine& l2,
                        const LagrangianLine& l3, long p);

// Same value through the certified adaptive quadrature, normalized the same
// way; the closed form must match it to rounding.
std::complex<double> maslov_index_integral(const LagrangianLine& l1, const LagrangianLine& l2,
                                           const LagrangianLine& l3, long p);

// Conjugation under swapping the last two lines, cyclic invariance, and the
// four-factor cocycle identity, all within tol.
bool maslov_relations_check(const std::array<LagrangianLine, 4>& lines, long p,
                            double tol = 1e-9);

// Explanatory note attached to p = 2 results: the value is normalized by
// the modulus sqrt(2) of the Gauss factor, so conventions that halve the
// factor instead would not land on the unit circle.
std::optional<std::string> maslov_normalization_note(long p);

}  // namespace padiq
