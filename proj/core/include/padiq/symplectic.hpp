#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "padiq/matrix.hpp"
#include "padiq/padic.hpp"

namespace padiq {

// g^T J0 g = J0, exactly. Throws on odd dimension.
bool is_symplectic(const QMat& g);

// All entries have valuation >= 0 and g is symplectic.
bool in_sp_zp(const QMat& g, long p);

// Stabilizer patterns of the almost self-dual lattices in dimension 4.
bool in_G_L1_2(const QMat& g, long p);
bool in_G_L2_2(const QMat& g, long p);

// Diagonal torus element diag(x_1..x_n, x_1^{-1}..x_n^{-1}).
struct TorusElement {
  std::vector<Q> x;

  explicit TorusElement(std::vector<Q> xs);
  std::size_t rank() const { return x.size(); }
  QMat matrix() const;
};

// Weyl generator action: i < n swaps x_i, x_{i+1}; i = n inverts x_n. 1-based.
TorusElement weyl_apply(std::size_t i, const TorusElement& t);

// Simple root value: i < n gives x_i / x_{i+1}; i = n gives x_n^2. 1-based.
Q simple_root(std::size_t i, const TorusElement& t);

struct ParabolicFactors {
  QMat xi1, xi2, xi3, xi4;
};

struct ParabolicResult {
  bool in_subgroup = false;
  std::string violating_block;  // set when not in the subgroup
  std::optional<ParabolicFactors> factors;
};

// Factor xi through the parabolic stabilizing Span(e_1..e_k); exact.
ParabolicResult parabolic_factorize(const QMat& xi, std::size_t k);

// Smallest filtration stratum containing a Lie algebra element, in {-2..2}.
int filtration_stratum(const QMat& X, std::size_t k);

struct IwasawaSL2 {
  long a = 0;
  Q u;
  QMat h;  // in SL(2, Z_p); g = diag(p^a, p^-a) * [[1,u],[0,1]] * h
};

IwasawaSL2 iwasawa_sl2(const QMat& g, long p);

enum class IwasawaVariant { self_dual, L1 };

struct IwasawaSp4 {
  long a1 = 0, a2 = 0;
  Q u, s, r, t;
  QMat torus, n1, n2, k;  // g = torus * n1 * n2 * k
};

// Exact Iwasawa-type decomposition of a 4x4 symplectic matrix against the
// standard integral compact (self_dual) or the G(L1,2) compact (L1).
// Throws std::domain_error when a pivot cannot be realized.
IwasawaSp4 iwasawa_sp4(const QMat& g, long p, IwasawaVariant variant);

// Builders for the shaped factors; used by iwasawa_sp4 and param_equiv.
QMat sp4_torus(long p, long a1, long a2);
QMat sp4_nu_self_dual(const Q& u);
QMat sp4_nsrt_self_dual(const Q& s, const Q& r, const Q& t);
QMat sp4_nu_L1(long p, const Q& u);
QMat sp4_nsrt_L1(long p, const Q& s, const Q& r, const Q& t);

struct GL2UnitDecomp {
  QMat a, mid, b;  // theta = a * mid * b, a and b in SL(2,Z_p), mid diagonal
};

GL2UnitDecomp gl2_unit_decompose(const QMat& theta, long p);

enum class ParamKind { self_dual_n2, L1_n2 };

// Whether two (u,s,r,t) parameter tuples give the same coset, i.e. the same
// image lattice; decided by integrality of the exact transition matrix.
bool param_equiv(ParamKind kind, long p, const std::array<Q, 4>& t1, const std::array<Q, 4>& t2);

}  // namespace padiq
