#pragma once

#include <array>
#include <vector>

#include "padiq/quadform.hpp"

namespace padiq {

// A line in the symplectic plane: either l_a = span{(1, a)} or l_* = span{(0, 1)}.
struct LagrangianLine {
  bool star = false;
  Q a;

  static LagrangianLine param(const Q& a) { return {false, a}; }
  static LagrangianLine infinity() { return {true, Q(0)}; }
  bool operator==(const LagrangianLine& o) const {
    return star == o.star && (star || a == o.a);
  }
};

// A Lagrangian subspace of (Q_p^{2n}, J0), spanned by the columns of basis.
struct LagrangianSubspace {
  QMat basis;  // 2n x n, full column rank, basis^T J0 basis = 0

  explicit LagrangianSubspace(QMat b);
  std::size_t half_dim() const { return basis.cols; }
};

LagrangianSubspace line_subspace(const LagrangianLine& line);

// Symmetric 3n x 3n matrix of the form J(z1,z2) + J(z2,z3) + J(z3,z1) on
// l1 + l2 + l3 in the given bases, coordinates blocked in argument order.
QMat triple_form(const LagrangianSubspace& l1, const LagrangianSubspace& l2,
                 const LagrangianSubspace& l3);

struct TripleInvariants {
  int mu;            // Hasse invariant of the diagonalized triple form
  SquareClass disc;  // square class of its determinant
  Q det;
};

// Throws std::domain_error("Q degenerate") when the triple form degenerates.
TripleInvariants triple_invariants(const LagrangianSubspace& l1, const LagrangianSubspace& l2,
                                   const LagrangianSubspace& l3, long p);

int mu(const LagrangianSubspace& l1, const LagrangianSubspace& l2, const LagrangianSubspace& l3,
       long p);

// Product of mu over all index triples i < j < k.
int mu_sequence(const std::vector<LagrangianSubspace>& lines, long p);

// Predicted mu of (l_{perm[0]}, l_{perm[1]}, l_{perm[2]}) from the invariants
// of (l1, l2, l3); perm is a permutation of {0, 1, 2}.
int mu_permuted_predict(const LagrangianSubspace& l1, const LagrangianSubspace& l2,
                        const LagrangianSubspace& l3, const std::array<int, 3>& perm, long p);

int permutation_parity(const std::array<int, 3>& perm);

}  // namespace padiq
