#pragma once

#include <vector>

#include "padiq/matrix.hpp"
#include "padiq/padic.hpp"
#include "padiq/rational.hpp"

namespace padiq {

// Hilbert symbol (a, b)_p for nonzero rationals, valued in {+1, -1}.
int hilbert_symbol(const Q& a, const Q& b, long p);

// Hilbert symbol at the real place.
int hilbert_symbol_real(const Q& a, const Q& b);

// Places where (a, b)_v could be nontrivial: 2, primes dividing a or b,
// and the real place (reported separately by the caller).
std::vector<long> relevant_primes(const Q& a, const Q& b);

// Product of (a, b)_v over all places; 1 for any nonzero a, b.
int hilbert_product(const Q& a, const Q& b);

// A quadratic form over Q given by a symmetric Gram matrix: Q(x) = x^T G x.
struct QuadForm {
  QMat gram;

  explicit QuadForm(QMat g);
  std::size_t rank_ambient() const { return gram.rows; }
  Q evaluate(const std::vector<Q>& x) const;
};

// Diagonal coefficients of an equivalent diagonal form, zeros dropped.
// Tolerates degenerate input (the radical simply contributes no entries).
std::vector<Q> diagonalize(const QMat& gram);

struct Diagonalization {
  std::vector<Q> coeffs;  // diagonal of basis^T * gram * basis, in index order
  QMat basis;
};

// Symmetric congruence reduction; throws std::domain_error naming the
// radical dimension when the form is degenerate.
Diagonalization diagonalize_with_basis(const QMat& gram);

// Determinant of the nondegenerate part (product of diagonal entries).
Q diag_det(const std::vector<Q>& diag);

// Hasse invariant prod_{i<j} (d_i, d_j)_p of a diagonal form.
int hasse_invariant(const std::vector<Q>& diag, long p);

// Whether the form has a nonzero p-adic zero.
bool is_isotropic(const std::vector<Q>& diag, long p);
bool is_isotropic(const QuadForm& form, long p);

// Whether the form represents t over Q_p; t = 0 asks for a nonzero zero.
bool represents(const std::vector<Q>& diag, const Q& t, long p);
bool represents(const QuadForm& form, const Q& t, long p);

}  // namespace padiq
