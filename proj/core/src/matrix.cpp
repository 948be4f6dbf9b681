#include "padiq/matrix.hpp"

#include <stdexcept>

namespace padiq {

QMat::QMat(std::size_t r, std::size_t c, std::initializer_list<Q> vals) : rows(r), cols(c), a(vals) {
  if (a.size() != r * c) throw std::invalid_argument("QMat: initializer size mismatch");
}

QMat QMat::identity(std::size_t n) {
  QMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::J0(std::size_t n) {
  QMat m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, n + i) = 1;
    m.at(n + i, i) = -1;
  }
  return m;
}

QMat QMat::operator*(const QMat& o) const {
  if (cols != o.rows) throw std::invalid_argument("QMat: shape mismatch in product");
  QMat r(rows, o.cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      const Q& x = at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

QMat QMat::operator+(const QMat& o) const {
  if (rows != o.rows || cols != o.cols) throw std::invalid_argument("QMat: shape mismatch");
  QMat r = *this;
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
  return r;
}

QMat QMat::operator-(const QMat& o) const {
  if (rows != o.rows || cols != o.cols) throw std::invalid_argument("QMat: shape mismatch");
  QMat r = *this;
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
  return r;
}

QMat QMat::operator-() const {
  QMat r = *this;
  for (auto& x : r.a) x = -x;
  return r;
}

QMat QMat::scaled(const Q& s) const {
  QMat r = *this;
  for (auto& x : r.a) x *= s;
  return r;
}

QMat QMat::transpose() const {
  QMat r(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

Q QMat::det() const {
  if (rows != cols) throw std::invalid_argument("QMat: det of non-square");
  QMat m = *this;
  Q d(1);
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t piv = c;
    while (piv < rows && m.at(piv, c) == 0) ++piv;
    if (piv == rows) return Q(0);
    if (piv != c) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    for (std::size_t i = c + 1; i < rows; ++i) {
      if (m.at(i, c) == 0) continue;
      Q f = m.at(i, c) / m.at(c, c);
      for (std::size_t j = c; j < cols; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

QMat QMat::inverse() const {
  if (rows != cols) throw std::invalid_argument("QMat: inverse of non-square");
  QMat m = *this;
  QMat inv = identity(rows);
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t piv = c;
    while (piv < rows && m.at(piv, c) == 0) ++piv;
    if (piv == rows) throw std::domain_error("QMat: singular matrix");
    if (piv != c)
      for (std::size_t j = 0; j < cols; ++j) {
        std::swap(m.at(piv, j), m.at(c, j));
        std::swap(inv.at(piv, j), inv.at(c, j));
      }
    Q f = m.at(c, c);
    for (std::size_t j = 0; j < cols; ++j) {
      m.at(c, j) /= f;
      inv.at(c, j) /= f;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == c || m.at(i, c) == 0) continue;
      Q g = m.at(i, c);
      for (std::size_t j = 0; j < cols; ++j) {
        m.at(i, j) -= g * m.at(c, j);
        inv.at(i, j) -= g * inv.at(c, j);
      }
    }
  }
  return inv;
}

bool QMat::is_zero() const {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

QMat QMat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  QMat b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b.at(i, j) = at(r0 + i, c0 + j);
  return b;
}

void QMat::set_block(std::size_t r0, std::size_t c0, const QMat& b) {
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) at(r0 + i, c0 + j) = b.at(i, j);
}

Q symp_pair(const std::vector<Q>& u, const std::vector<Q>& v) {
  if (u.size() != v.size() || u.size() % 2 != 0)
    throw std::invalid_argument("symp_pair: need equal even dimensions");
  std::size_t n = u.size() / 2;
  Q s(0);
  for (std::size_t i = 0; i < n; ++i) s += u[i] * v[n + i] - u[n + i] * v[i];
  return s;
}

}  // namespace padiq
