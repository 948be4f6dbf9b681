#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "padiq/rational.hpp"

namespace padiq {

/// Dense matrix over Q with exact arithmetic.
struct QMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Q> a;  // row-major

  QMat() = default;
  QMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Q(0)) {}
  QMat(std::size_t r, std::size_t c, std::initializer_list<Q> vals);

  Q& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Q& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static QMat identity(std::size_t n);
  /// Standard symplectic form [[0, I], [-I, 0]] of size 2n.
  static QMat J0(std::size_t n);

  QMat operator*(const QMat& o) const;
  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  QMat operator-() const;
  QMat scaled(const Q& s) const;
  QMat transpose() const;
  Q det() const;
  QMat inverse() const;  // throws std::domain_error when singular
  bool is_zero() const;

  /// Copy of the block with rows [r0, r0+nr) and cols [c0, c0+nc).
  QMat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const QMat& b);

  friend bool operator==(const QMat&, const QMat&) = default;
};

/// uT J0 v for column vectors of even dimension.
Q symp_pair(const std::vector<Q>& u, const std::vector<Q>& v);

}  // namespace padiq
