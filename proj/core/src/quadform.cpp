#include "padiq/quadform.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace padiq {

namespace {

// a = p^alpha u with u a unit.
std::pair<long, Z> split_int(const Q& a, long p) {
  auto [v, u] = unit_split(a, p);
  // u is a p-adic unit written as a fraction prime to p; reduce it to an
  // integer residue class when only quadratic data is needed.
  return {v, u.get_num() * u.get_den()};
}

int eps4(const Z& u) { return mpz_tstbit(Z((u - 1) / 2).get_mpz_t(), 0) ? 1 : 0; }

int omega8(const Z& u) {
  Z w = (u * u - 1) / 8;
  return mpz_tstbit(w.get_mpz_t(), 0) ? 1 : 0;
}

}  // namespace

int hilbert_symbol(const Q& a, const Q& b, long p) {
  if (a == 0 || b == 0) throw std::domain_error("hilbert_symbol: arguments must be nonzero");
  auto [alpha, u] = split_int(a, p);
  auto [beta, v] = split_int(b, p);
  if (p != 2) {
    int s = 0;
    if ((alpha % 2 != 0) && (beta % 2 != 0) && p % 4 == 3) s ^= 1;
    if (beta % 2 != 0 && legendre(u, p) < 0) s ^= 1;
    if (alpha % 2 != 0 && legendre(v, p) < 0) s ^= 1;
    return s ? -1 : 1;
  }
  int s = eps4(u) * eps4(v);
  if (alpha % 2 != 0) s ^= omega8(v);
  if (beta % 2 != 0) s ^= omega8(u);
  return (s & 1) ? -1 : 1;
}

int hilbert_symbol_real(const Q& a, const Q& b) {
  if (a == 0 || b == 0) throw std::domain_error("hilbert_symbol_real: arguments must be nonzero");
  return (a < 0 && b < 0) ? -1 : 1;
}

std::vector<long> relevant_primes(const Q& a, const Q& b) {
  std::set<long> ps{2};
  auto add_factors = [&](Z n) {
    n = abs(n);
    for (long q = 2; Z(q) * q <= n; ++q) {
      while (n % q == 0) {
        ps.insert(q);
        n /= q;
      }
    }
    if (n > 1) ps.insert(n.get_si());
  };
  add_factors(a.get_num());
  add_factors(a.get_den());
  add_factors(b.get_num());
  add_factors(b.get_den());
  return {ps.begin(), ps.end()};
}

int hilbert_product(const Q& a, const Q& b) {
  int prod = hilbert_symbol_real(a, b);
  for (long p : relevant_primes(a, b)) prod *= hilbert_symbol(a, b, p);
  return prod;
}

QuadForm::QuadForm(QMat g) : gram(std::move(g)) {
  if (gram.rows != gram.cols) throw std::invalid_argument("QuadForm: gram must be square");
  if (gram.transpose() != gram) throw std::invalid_argument("QuadForm: gram must be symmetric");
}

Q QuadForm::evaluate(const std::vector<Q>& x) const {
  if (x.size() != gram.rows) throw std::invalid_argument("QuadForm::evaluate: size mismatch");
  Q acc(0);
  for (std::size_t i = 0; i < gram.rows; ++i)
    for (std::size_t j = 0; j < gram.cols; ++j) acc += x[i] * gram.at(i, j) * x[j];
  return acc;
}

namespace {

// Reduce g in place to diagonal shape by symmetric congruence, accumulating
// the column operations into basis so basis^T * gram * basis stays equal to g.
void congruence_reduce(QMat& g, QMat& basis) {
  std::size_t n = g.rows;
  std::vector<bool> used(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (!used[i] && g.at(i, i) != 0) piv = i;
    if (piv == n) {
      // No diagonal pivot: hunt for an off-diagonal entry and symmetrize.
      std::size_t bi = n, bj = n;
      for (std::size_t i = 0; i < n && bi == n; ++i) {
        if (used[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (used[j] || j == i || g.at(i, j) == 0) continue;
          bi = i;
          bj = j;
          break;
        }
      }
      if (bi == n) break;  // remaining block is zero
      // Column/row operation e_bi -> e_bi + e_bj puts 2 g_ij on the diagonal.
      for (std::size_t k = 0; k < n; ++k) g.at(bi, k) += g.at(bj, k);
      for (std::size_t k = 0; k < n; ++k) g.at(k, bi) += g.at(k, bj);
      for (std::size_t k = 0; k < n; ++k) basis.at(k, bi) += basis.at(k, bj);
      piv = bi;
    }
    Q d = g.at(piv, piv);
    used[piv] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i] || g.at(i, piv) == 0) continue;
      Q f = g.at(i, piv) / d;
      for (std::size_t k = 0; k < n; ++k) g.at(i, k) -= f * g.at(piv, k);
      for (std::size_t k = 0; k < n; ++k) g.at(k, i) -= f * g.at(k, piv);
      for (std::size_t k = 0; k < n; ++k) basis.at(k, i) -= f * basis.at(k, piv);
    }
  }
}

}  // namespace

std::vector<Q> diagonalize(const QMat& gram) {
  if (gram.rows != gram.cols || gram.transpose() != gram)
    throw std::invalid_argument("diagonalize: need a symmetric square matrix");
  QMat g = gram;
  QMat basis = QMat::identity(g.rows);
  congruence_reduce(g, basis);
  std::vector<Q> diag;
  for (std::size_t i = 0; i < g.rows; ++i)
    if (g.at(i, i) != 0) diag.push_back(g.at(i, i));
  return diag;
}

Diagonalization diagonalize_with_basis(const QMat& gram) {
  if (gram.rows != gram.cols || gram.transpose() != gram)
    throw std::invalid_argument("diagonalize: need a symmetric square matrix");
  QMat g = gram;
  QMat basis = QMat::identity(g.rows);
  congruence_reduce(g, basis);
  std::size_t radical = 0;
  std::vector<Q> diag;
  for (std::size_t i = 0; i < g.rows; ++i) {
    if (g.at(i, i) == 0)
      ++radical;
    else
      diag.push_back(g.at(i, i));
  }
  if (radical > 0)
    throw std::domain_error("form is degenerate, radical dimension " + std::to_string(radical));
  return {std::move(diag), std::move(basis)};
}

Q diag_det(const std::vector<Q>& diag) {
  Q d(1);
  for (const Q& x : diag) d *= x;
  return d;
}

int hasse_invariant(const std::vector<Q>& diag, long p) {
  int h = 1;
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) h *= hilbert_symbol(diag[i], diag[j], p);
  return h;
}

bool is_isotropic(const std::vector<Q>& diag, long p) {
  std::size_t n = diag.size();
  for (const Q& d : diag)
    if (d == 0) throw std::invalid_argument("is_isotropic: degenerate diagonal");
  if (n <= 1) return false;
  if (n >= 5) return true;
  Q det = diag_det(diag);
  if (n == 2) return is_padic_square(-det, p);
  int h = hasse_invariant(diag, p);
  if (n == 3) return h == hilbert_symbol(Q(-1), -det, p);
  return !(is_padic_square(det, p) && h == -hilbert_symbol(Q(-1), Q(-1), p));
}

bool is_isotropic(const QuadForm& form, long p) {
  auto d = diagonalize(form.gram);
  if (d.size() < form.gram.rows) return true;  // degenerate forms have radical vectors
  return is_isotropic(d, p);
}

bool represents(const std::vector<Q>& diag, const Q& t, long p) {
  if (t == 0) return is_isotropic(diag, p);
  if (diag.empty()) return false;
  if (diag.size() == 1) return is_padic_square(t / diag[0], p);
  std::vector<Q> ext = diag;
  ext.push_back(-t);
  return is_isotropic(ext, p);
}

bool represents(const QuadForm& form, const Q& t, long p) {
  auto d = diagonalize(form.gram);
  if (d.size() < form.gram.rows && !d.empty()) {
    // Degenerate: the radical contributes nothing; t is represented iff the
    // nondegenerate part represents it or is isotropic (then it is universal).
    return is_isotropic(d, p) || represents(d, t, p);
  }
  if (d.empty()) return false;
  return represents(d, t, p);
}

}  // namespace padiq
