#pragma once

#include <vector>

#include "padiq/matrix.hpp"

namespace padiq {

// Lattices in Q_p^{2n} are given by an invertible matrix whose columns span
// them over Z_p. All operations are exact.

// Basis of the dual lattice under the pairing (x, y) -> x^T J0 y.
QMat dual_lattice(const QMat& basis);

bool is_self_dual(const QMat& basis, long p);

// Smallest d >= 0 such that p^d kills the pairing defect, i.e. p^d times the
// Gram matrix of the basis is integral.
long lattice_level(const QMat& basis, long p);

// Exponents l_1 >= l_2 >= ... >= l_n of the symplectic divisor chain: some
// basis has Gram matrix with hyperbolic blocks scaled by p^{-l_i}.
std::vector<long> symplectic_divisors(const QMat& basis, long p);

// Whether two bases span the same Z_p-lattice.
bool lattice_equal(const QMat& b1, const QMat& b2, long p);

}  // namespace padiq
