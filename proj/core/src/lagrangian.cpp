#include "padiq/lagrangian.hpp"

#include <stdexcept>

namespace padiq {

namespace {

std::size_t column_rank(QMat m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols; ++col) {
    std::size_t piv = m.rows;
    for (std::size_t r = rank; r < m.rows && piv == m.rows; ++r)
      if (m.at(r, col) != 0) piv = r;
    if (piv == m.rows) continue;
    for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(rank, c));
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == rank || m.at(r, col) == 0) continue;
      Q f = m.at(r, col) / m.at(rank, col);
      for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) -= f * m.at(rank, c);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

LagrangianSubspace::LagrangianSubspace(QMat b) : basis(std::move(b)) {
  if (basis.rows == 0 || basis.rows % 2 != 0 || basis.cols * 2 != basis.rows)
    throw std::invalid_argument("LagrangianSubspace: basis must be 2n x n");
  if (column_rank(basis) != basis.cols)
    throw std::invalid_argument("LagrangianSubspace: basis columns are dependent");
  QMat j = QMat::J0(basis.cols);
  if (!(basis.transpose() * j * basis).is_zero())
    throw std::invalid_argument("LagrangianSubspace: basis is not isotropic");
}

LagrangianSubspace line_subspace(const LagrangianLine& line) {
  QMat b(2, 1);
  if (line.star) {
    b.at(0, 0) = 0;
    b.at(1, 0) = 1;
  } else {
    b.at(0, 0) = 1;
    b.at(1, 0) = line.a;
  }
  return LagrangianSubspace(std::move(b));
}

QMat triple_form(const LagrangianSubspace& l1, const LagrangianSubspace& l2,
                 const LagrangianSubspace& l3) {
  std::size_t n = l1.half_dim();
  if (l2.half_dim() != n || l3.half_dim() != n)
    throw std::invalid_argument("triple_form: mismatched ambient dimensions");
  QMat j = QMat::J0(n);
  const QMat* b[3] = {&l1.basis, &l2.basis, &l3.basis};
  QMat g(3 * n, 3 * n);
  Q half(1, 2);
  // Symmetrized coefficients of J(z1,z2) + J(z2,z3) + J(z3,z1).
  auto put = [&](std::size_t bi, std::size_t bj) {
    QMat block = (b[bi]->transpose() * j * *b[bj]).scaled(half);
    g.set_block(bi * n, bj * n, block);
    g.set_block(bj * n, bi * n, block.transpose());
  };
  put(0, 1);
  put(1, 2);
  put(2, 0);
  return g;
}

TripleInvariants triple_invariants(const LagrangianSubspace& l1, const LagrangianSubspace& l2,
                                   const LagrangianSubspace& l3, long p) {
  QMat g = triple_form(l1, l2, l3);
  Q det = g.det();
  if (det == 0) throw std::domain_error("Q degenerate");
  auto diag = diagonalize(g);
  return {hasse_invariant(diag, p), square_class(det, p), det};
}

int mu(const LagrangianSubspace& l1, const LagrangianSubspace& l2, const LagrangianSubspace& l3,
       long p) {
  return triple_invariants(l1, l2, l3, p).mu;
}

int mu_sequence(const std::vector<LagrangianSubspace>& lines, long p) {
  if (lines.size() < 3) throw std::invalid_argument("mu_sequence: need at least three lines");
  int prod = 1;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      for (std::size_t k = j + 1; k < lines.size(); ++k) {
        try {
          prod *= mu(lines[i], lines[j], lines[k], p);
        } catch (const std::domain_error&) {
          throw std::domain_error("mu_sequence: degenerate triple (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ", " + std::to_string(k) + ")");
        }
      }
  return prod;
}

int permutation_parity(const std::array<int, 3>& perm) {
  int inv = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv % 2;
}

int mu_permuted_predict(const LagrangianSubspace& l1, const LagrangianSubspace& l2,
                        const LagrangianSubspace& l3, const std::array<int, 3>& perm, long p) {
  std::array<bool, 3> seen{false, false, false};
  for (int v : perm) {
    if (v < 0 || v > 2 || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("mu_permuted_predict: not a permutation of {0,1,2}");
    seen[static_cast<std::size_t>(v)] = true;
  }
  auto inv = triple_invariants(l1, l2, l3, p);
  if (permutation_parity(perm) == 0) return inv.mu;
  long m = static_cast<long>(3 * l1.half_dim());
  long choose2 = m * (m - 1) / 2;
  int sign = 1;
  if (choose2 % 2 != 0) sign *= hilbert_symbol(Q(-1), Q(-1), p);
  if ((m - 1) % 2 != 0) sign *= hilbert_symbol(Q(-1), inv.det, p);
  return sign * inv.mu;
}

}  // namespace padiq
