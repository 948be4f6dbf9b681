#include "padiq/lattice.hpp"

#include <limits>
#include <stdexcept>

#include "padiq/padic.hpp"

namespace padiq {

namespace {

constexpr long kInfVal = std::numeric_limits<long>::max();

void require_basis(const QMat& basis) {
  if (basis.rows != basis.cols || basis.rows == 0 || basis.rows % 2 != 0)
    throw std::invalid_argument("lattice: basis must be square of even size");
  if (basis.det() == 0) throw std::invalid_argument("lattice: basis is singular");
}

long entry_val(const Q& q, long p) {
  auto v = valuation(q, p);
  return v ? *v : kInfVal;
}

long min_val(const QMat& m, long p) {
  long best = kInfVal;
  for (const Q& q : m.a) best = std::min(best, entry_val(q, p));
  return best;
}

QMat gram(const QMat& basis) {
  return basis.transpose() * QMat::J0(basis.rows / 2) * basis;
}

// Congruence column+row operation g -> E^T g E with E = I + alpha e_{jk}.
void congr_add(QMat& g, std::size_t k, std::size_t j, const Q& alpha) {
  if (alpha == 0) return;
  for (std::size_t i = 0; i < g.rows; ++i) g.at(i, k) += alpha * g.at(i, j);
  for (std::size_t i = 0; i < g.cols; ++i) g.at(k, i) += alpha * g.at(j, i);
}

void congr_swap(QMat& g, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < g.rows; ++r) std::swap(g.at(r, i), g.at(r, j));
  for (std::size_t c = 0; c < g.cols; ++c) std::swap(g.at(i, c), g.at(j, c));
}

void congr_scale(QMat& g, std::size_t j, const Q& f) {
  for (std::size_t i = 0; i < g.rows; ++i) g.at(i, j) *= f;
  for (std::size_t i = 0; i < g.cols; ++i) g.at(j, i) *= f;
}

}  // namespace

QMat dual_lattice(const QMat& basis) {
  require_basis(basis);
  return (basis.transpose() * QMat::J0(basis.rows / 2)).inverse();
}

bool is_self_dual(const QMat& basis, long p) {
  require_basis(basis);
  QMat g = gram(basis);
  if (min_val(g, p) < 0) return false;
  return valuation_nonzero(g.det(), p) == 0;
}

long lattice_level(const QMat& basis, long p) {
  require_basis(basis);
  return std::max(0L, -min_val(gram(basis), p));
}

std::vector<long> symplectic_divisors(const QMat& basis, long p) {
  require_basis(basis);
  QMat g = gram(basis);
  std::size_t dim = g.rows;
  std::vector<long> out;
  for (std::size_t base = 0; base + 1 < dim; base += 2) {
    long best = kInfVal;
    std::size_t bi = base, bj = base + 1;
    for (std::size_t i = base; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) {
        long v = entry_val(g.at(i, j), p);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best == kInfVal)
      throw std::logic_error("symplectic_divisors: degenerate pairing block");
    congr_swap(g, base, bi);
    if (bj == base) bj = bi;  // the swap may have moved the second pivot
    congr_swap(g, base + 1, bj);
    Q pivot = g.at(base, base + 1);
    Q target = Q(1);
    for (long e = 0; e < -best; ++e) target /= q_of(p);
    for (long e = 0; e < best; ++e) target *= q_of(p);
    congr_scale(g, base + 1, target / pivot);
    for (std::size_t k = base + 2; k < dim; ++k) {
      congr_add(g, k, base + 1, -(g.at(base, k) / target));
      congr_add(g, k, base, g.at(base + 1, k) / target);
    }
    out.push_back(-best);
  }
  return out;
}

bool lattice_equal(const QMat& b1, const QMat& b2, long p) {
  require_basis(b1);
  require_basis(b2);
  QMat t = b1.inverse() * b2;
  if (min_val(t, p) < 0) return false;
  return valuation_nonzero(t.det(), p) == 0;
}

}  // namespace padiq
