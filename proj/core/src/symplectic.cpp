#include "padiq/symplectic.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

namespace padiq {

namespace {

constexpr long kInfVal = std::numeric_limits<long>::max();

long entry_val(const QMat& m, std::size_t i, std::size_t j, long p) {
  auto v = valuation(m.at(i, j), p);
  return v ? *v : kInfVal;
}

bool matrix_integral(const QMat& m, long p) {
  for (const Q& q : m.a) {
    if (q != 0 && valuation_nonzero(q, p) < 0) return false;
  }
  return true;
}

Q pow_p(long p, long e) {
  Q q = q_of(p);
  Q out(1);
  if (e >= 0) {
    for (long i = 0; i < e; ++i) out *= q;
  } else {
    for (long i = 0; i < -e; ++i) out /= q;
  }
  return out;
}

void require_square_even(const QMat& g, const char* who) {
  if (g.rows != g.cols || g.rows % 2 != 0 || g.rows == 0)
    throw std::invalid_argument(std::string(who) + ": need a square matrix of even size");
}

void scale_col(QMat& m, std::size_t j, const Q& f) {
  for (std::size_t i = 0; i < m.rows; ++i) m.at(i, j) *= f;
}

// col_dst += f * col_src
void add_col(QMat& m, std::size_t dst, std::size_t src, const Q& f) {
  if (f == 0) return;
  for (std::size_t i = 0; i < m.rows; ++i) m.at(i, dst) += f * m.at(i, src);
}

std::size_t pivot_col(const QMat& m, std::size_t row, const std::vector<std::size_t>& cands,
                      long p, long& val_out) {
  long best = kInfVal;
  std::size_t best_j = cands.front();
  for (std::size_t j : cands) {
    long v = entry_val(m, row, j, p);
    if (v < best) {
      best = v;
      best_j = j;
    }
  }
  if (best == kInfVal)
    throw std::domain_error("iwasawa: pivot row vanishes on the remaining columns");
  val_out = best;
  return best_j;
}

// Scale column j so the (row, j) entry becomes exactly p^val, then clear the
// row from every other candidate column with integral multipliers.
void normalize_and_clear(QMat& m, std::size_t row, std::size_t j, long val,
                         const std::vector<std::size_t>& cands, long p) {
  Q target = pow_p(p, val);
  scale_col(m, j, target / m.at(row, j));
  for (std::size_t c : cands) {
    if (c == j || m.at(row, c) == 0) continue;
    add_col(m, c, j, -(m.at(row, c) / target));
  }
}

std::vector<std::size_t> without(const std::vector<std::size_t>& v, std::size_t drop) {
  std::vector<std::size_t> out;
  for (std::size_t j : v)
    if (j != drop) out.push_back(j);
  return out;
}

QMat cols_to_matrix(const QMat& w, const std::array<std::size_t, 4>& order) {
  QMat m(4, 4);
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) m.at(i, j) = w.at(i, order[j]);
  return m;
}

// diag(1, 1, 1/p, 1); conjugation bridge between the two 4x4 frames used by
// the L1 decomposition.
QMat l1_frame(long p) {
  QMat t = QMat::identity(4);
  t.at(2, 2) = Q(1) / q_of(p);
  return t;
}

QMat conj(const QMat& t, const QMat& g, const QMat& tinv) { return t * g * tinv; }

void require_integral(const Q& x, const long p, const char* what) {
  if (x != 0 && valuation_nonzero(x, p) < 0)
    throw std::domain_error(std::string("iwasawa: pivot not realizable, ") + what +
                            " is not integral");
}

}  // namespace

bool is_symplectic(const QMat& g) {
  require_square_even(g, "is_symplectic");
  QMat j0 = QMat::J0(g.rows / 2);
  return g.transpose() * j0 * g == j0;
}

bool in_sp_zp(const QMat& g, long p) { return matrix_integral(g, p) && is_symplectic(g); }

namespace {

bool meets_val_pattern(const QMat& g, long p, const long (&vmin)[4][4]) {
  if (g.rows != 4 || g.cols != 4) return false;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (entry_val(g, i, j, p) < vmin[i][j]) return false;
  return is_symplectic(g);
}

}  // namespace

bool in_G_L1_2(const QMat& g, long p) {
  static const long vmin[4][4] = {
      {0, 0, 1, 0}, {0, 0, 1, 0}, {-1, -1, 0, -1}, {0, 0, 1, 0}};
  return meets_val_pattern(g, p, vmin);
}

bool in_G_L2_2(const QMat& g, long p) {
  static const long vmin[4][4] = {
      {0, 0, 1, 1}, {0, 0, 1, 1}, {-1, -1, 0, 0}, {-1, -1, 0, 0}};
  return meets_val_pattern(g, p, vmin);
}

TorusElement::TorusElement(std::vector<Q> xs) : x(std::move(xs)) {
  if (x.empty()) throw std::invalid_argument("TorusElement: empty coordinate list");
  for (const Q& q : x)
    if (q == 0) throw std::invalid_argument("TorusElement: coordinates must be nonzero");
}

QMat TorusElement::matrix() const {
  std::size_t n = x.size();
  QMat m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) = x[i];
    m.at(n + i, n + i) = Q(1) / x[i];
  }
  return m;
}

TorusElement weyl_apply(std::size_t i, const TorusElement& t) {
  std::size_t n = t.rank();
  if (i < 1 || i > n) throw std::invalid_argument("weyl_apply: generator index out of range");
  TorusElement out = t;
  if (i < n)
    std::swap(out.x[i - 1], out.x[i]);
  else
    out.x[n - 1] = Q(1) / out.x[n - 1];
  return out;
}

Q simple_root(std::size_t i, const TorusElement& t) {
  std::size_t n = t.rank();
  if (i < 1 || i > n) throw std::invalid_argument("simple_root: index out of range");
  if (i < n) return t.x[i - 1] / t.x[i];
  return t.x[n - 1] * t.x[n - 1];
}

namespace {

struct BlockGrid {
  std::size_t n = 0, k = 0;
  std::size_t off[5];  // block boundaries: 0, k, n, n+k, 2n
  std::size_t size(std::size_t b) const { return off[b + 1] - off[b]; }
  QMat get(const QMat& m, std::size_t bi, std::size_t bj) const {
    return m.block(off[bi], off[bj], size(bi), size(bj));
  }
  void put(QMat& m, std::size_t bi, std::size_t bj, const QMat& v) const {
    m.set_block(off[bi], off[bj], v);
  }
  bool zero(const QMat& m, std::size_t bi, std::size_t bj) const {
    return get(m, bi, bj).is_zero();
  }
};

BlockGrid make_grid(std::size_t two_n, std::size_t k) {
  std::size_t n = two_n / 2;
  if (k > n) throw std::invalid_argument("block size k exceeds n");
  return BlockGrid{n, k, {0, k, n, n + k, 2 * n}};
}

}  // namespace

ParabolicResult parabolic_factorize(const QMat& xi, std::size_t k) {
  require_square_even(xi, "parabolic_factorize");
  if (!is_symplectic(xi))
    throw std::invalid_argument("parabolic_factorize: matrix is not symplectic");
  BlockGrid bg = make_grid(xi.rows, k);
  std::size_t n = bg.n;

  ParabolicResult res;
  const std::pair<std::size_t, std::size_t> must_vanish[] = {
      {1, 0}, {2, 0}, {3, 0}, {2, 1}, {2, 3}};
  for (auto [bi, bj] : must_vanish) {
    if (!bg.zero(xi, bi, bj)) {
      res.in_subgroup = false;
      res.violating_block =
          "(" + std::to_string(bi + 1) + "," + std::to_string(bj + 1) + ")";
      return res;
    }
  }

  QMat g = bg.get(xi, 0, 0);
  if (k > 0 && g.det() == 0)
    throw std::logic_error("parabolic_factorize: upper-left block singular despite membership");
  QMat ginv = g.inverse();
  QMat E = ginv * bg.get(xi, 0, 1);
  QMat w = ginv * bg.get(xi, 0, 2);
  QMat F = ginv * bg.get(xi, 0, 3);
  QMat A = bg.get(xi, 1, 1);
  QMat B = bg.get(xi, 1, 3);
  QMat C = bg.get(xi, 3, 1);
  QMat D = bg.get(xi, 3, 3);

  ParabolicFactors f;
  f.xi1 = QMat::identity(2 * n);
  bg.put(f.xi1, 1, 1, A);
  bg.put(f.xi1, 1, 3, B);
  bg.put(f.xi1, 3, 1, C);
  bg.put(f.xi1, 3, 3, D);

  f.xi2 = QMat::identity(2 * n);
  bg.put(f.xi2, 0, 0, g);
  bg.put(f.xi2, 2, 2, ginv.transpose());

  f.xi3 = QMat::identity(2 * n);
  bg.put(f.xi3, 0, 1, E);
  bg.put(f.xi3, 0, 3, F);
  bg.put(f.xi3, 1, 2, F.transpose());
  bg.put(f.xi3, 3, 2, -E.transpose());

  f.xi4 = QMat::identity(2 * n);
  bg.put(f.xi4, 0, 2, w);

  if (f.xi1 * f.xi2 * f.xi3 * f.xi4 != xi)
    throw std::logic_error("parabolic_factorize: reconstruction failed");
  res.in_subgroup = true;
  res.factors = std::move(f);
  return res;
}

int filtration_stratum(const QMat& X, std::size_t k) {
  require_square_even(X, "filtration_stratum");
  QMat j0 = QMat::J0(X.rows / 2);
  if (!(X.transpose() * j0 + j0 * X).is_zero())
    throw std::invalid_argument("filtration_stratum: matrix is not in the Lie algebra");
  BlockGrid bg = make_grid(X.rows, k);

  auto zero_outside = [&](std::initializer_list<std::pair<std::size_t, std::size_t>> allowed) {
    for (std::size_t bi = 0; bi < 4; ++bi)
      for (std::size_t bj = 0; bj < 4; ++bj) {
        bool ok = false;
        for (auto [ai, aj] : allowed)
          if (ai == bi && aj == bj) ok = true;
        if (!ok && !bg.zero(X, bi, bj)) return false;
      }
    return true;
  };

  if (zero_outside({{0, 2}})) return -2;
  if (zero_outside({{0, 2}, {0, 1}, {0, 3}, {1, 2}, {3, 2}})) return -1;
  if (zero_outside({{0, 2},
                    {0, 1},
                    {0, 3},
                    {1, 2},
                    {3, 2},
                    {0, 0},
                    {1, 1},
                    {2, 2},
                    {3, 3},
                    {1, 3},
                    {3, 1}}))
    return 0;
  if (bg.zero(X, 2, 0)) return 1;
  return 2;
}

IwasawaSL2 iwasawa_sl2(const QMat& g, long p) {
  if (g.rows != 2 || g.cols != 2) throw std::invalid_argument("iwasawa_sl2: need a 2x2 matrix");
  if (!is_symplectic(g)) throw std::invalid_argument("iwasawa_sl2: determinant is not 1");
  const Q gamma = g.at(1, 0), delta = g.at(1, 1);
  long vg = gamma == 0 ? kInfVal : valuation_nonzero(gamma, p);
  long vd = delta == 0 ? kInfVal : valuation_nonzero(delta, p);
  long m = std::min(vg, vd);
  Q pm = pow_p(p, m);
  Q gp = gamma / pm, dp = delta / pm;

  IwasawaSL2 out;
  if (vg == m) {
    out.h = QMat(2, 2, {Q(0), Q(-1) / gp, gp, dp});
  } else {
    out.h = QMat(2, 2, {Q(1) / dp, Q(0), gp, dp});
  }
  QMat bu = g * out.h.inverse();
  out.a = -m;
  out.u = bu.at(0, 1) * pm;
  QMat torus(2, 2, {pow_p(p, out.a), Q(0), Q(0), pow_p(p, -out.a)});
  QMat nu(2, 2, {Q(1), out.u, Q(0), Q(1)});
  if (torus * nu * out.h != g) throw std::logic_error("iwasawa_sl2: reconstruction failed");
  if (!in_sp_zp(out.h, p)) throw std::logic_error("iwasawa_sl2: compact part not integral");
  return out;
}

QMat sp4_torus(long p, long a1, long a2) {
  QMat m(4, 4);
  m.at(0, 0) = pow_p(p, a1);
  m.at(1, 1) = pow_p(p, a2);
  m.at(2, 2) = pow_p(p, -a1);
  m.at(3, 3) = pow_p(p, -a2);
  return m;
}

QMat sp4_nu_self_dual(const Q& u) {
  QMat m = QMat::identity(4);
  m.at(0, 1) = u;
  m.at(3, 2) = -u;
  return m;
}

QMat sp4_nsrt_self_dual(const Q& s, const Q& r, const Q& t) {
  QMat m = QMat::identity(4);
  m.at(0, 2) = s;
  m.at(0, 3) = r;
  m.at(1, 2) = r;
  m.at(1, 3) = t;
  return m;
}

QMat sp4_nu_L1(long p, const Q& u) {
  QMat m(4, 4);
  m.at(0, 0) = Q(1);
  m.at(1, 0) = u;
  m.at(1, 1) = q_of(p);
  m.at(2, 2) = Q(1);
  m.at(2, 3) = -u;
  m.at(3, 3) = Q(1) / q_of(p);
  return m;
}

QMat sp4_nsrt_L1(long p, const Q& s, const Q& r, const Q& t) {
  QMat m = QMat::identity(4);
  m.at(2, 0) = s;
  m.at(2, 1) = q_of(p) * r;
  m.at(3, 0) = r;
  m.at(3, 1) = t;
  return m;
}

namespace {

IwasawaSp4 iwasawa_sp4_self_dual(const QMat& g, long p) {
  QMat w = g;
  std::vector<std::size_t> active = {0, 1, 2, 3};

  // Split off the e-plane part: make rows 3 and 4 pivotal in two columns.
  long k3 = 0;
  std::size_t j3 = pivot_col(w, 2, active, p, k3);
  normalize_and_clear(w, 2, j3, k3, active, p);
  std::vector<std::size_t> rem = without(active, j3);
  long k4 = 0;
  std::size_t j4 = pivot_col(w, 3, rem, p, k4);
  normalize_and_clear(w, 3, j4, k4, rem, p);

  // Hermite form of the rank-2 piece supported on the e-plane.
  std::vector<std::size_t> eids = without(rem, j4);
  long a2 = 0;
  std::size_t j2 = pivot_col(w, 1, eids, p, a2);
  normalize_and_clear(w, 1, j2, a2, eids, p);
  std::size_t j1 = without(eids, j2).front();
  long a1 = entry_val(w, 0, j1, p);
  if (a1 == kInfVal) throw std::domain_error("iwasawa: degenerate column");
  scale_col(w, j1, pow_p(p, a1) / w.at(0, j1));

  if (k3 != -a1)
    throw std::domain_error("iwasawa: pivot not realizable, row 3 scale is p^" +
                            std::to_string(k3) + " but the torus needs p^" + std::to_string(-a1));
  if (k4 != -a2)
    throw std::domain_error("iwasawa: pivot not realizable, row 4 scale is p^" +
                            std::to_string(k4) + " but the torus needs p^" + std::to_string(-a2));

  // The u parameter appears twice; shift col j3 by col j4 to reconcile.
  Q u0 = -w.at(3, j3) * pow_p(p, a2);
  Q u1 = w.at(0, j2) * pow_p(p, -a1);
  Q delta = u0 - u1;
  require_integral(delta, p, "the u-shift");
  add_col(w, j3, j4, delta);
  Q u = u1;

  Q r = w.at(1, j3) * pow_p(p, -a2);
  Q s = w.at(0, j3) * pow_p(p, -a1) - u * r;
  Q t = w.at(1, j4) * pow_p(p, -a2);

  Q w40_target = pow_p(p, a1) * (r + u * t);
  Q alpha = (w40_target - w.at(0, j4)) * pow_p(p, -a1);
  require_integral(alpha, p, "the r-shift");
  add_col(w, j4, j1, alpha);

  IwasawaSp4 out;
  out.a1 = a1;
  out.a2 = a2;
  out.u = u;
  out.s = s;
  out.r = r;
  out.t = t;
  out.torus = sp4_torus(p, a1, a2);
  out.n1 = sp4_nu_self_dual(u);
  out.n2 = sp4_nsrt_self_dual(s, r, t);

  QMat m = cols_to_matrix(w, {j1, j2, j3, j4});
  if (m != out.torus * out.n1 * out.n2)
    throw std::logic_error("iwasawa: shaped basis does not match the factor product");
  out.k = m.inverse() * g;
  if (!in_sp_zp(out.k, p)) throw std::logic_error("iwasawa: compact part not integral");
  return out;
}

IwasawaSp4 iwasawa_sp4_L1(const QMat& g, long p) {
  QMat tf = l1_frame(p);
  QMat tfinv = tf.inverse();
  QMat gt = conj(tfinv, g, tf);

  QMat w = gt;
  std::vector<std::size_t> active = {0, 1, 2, 3};

  long a1 = 0;
  std::size_t j1 = pivot_col(w, 0, active, p, a1);
  normalize_and_clear(w, 0, j1, a1, active, p);
  std::vector<std::size_t> rem1 = without(active, j1);

  long a2p1 = 0;
  std::size_t j2 = pivot_col(w, 1, rem1, p, a2p1);
  normalize_and_clear(w, 1, j2, a2p1, rem1, p);
  long a2 = a2p1 - 1;
  std::vector<std::size_t> rem2 = without(rem1, j2);

  long m4 = 0;
  std::size_t j4 = pivot_col(w, 3, rem2, p, m4);
  if (m4 != -a2 - 1)
    throw std::domain_error("iwasawa: pivot not realizable, row 4 scale is p^" +
                            std::to_string(m4) + " but the torus needs p^" +
                            std::to_string(-a2 - 1));
  normalize_and_clear(w, 3, j4, m4, rem2, p);
  std::size_t j3 = without(rem2, j4).front();
  long m3 = entry_val(w, 2, j3, p);
  if (m3 != -a1)
    throw std::domain_error("iwasawa: pivot not realizable, row 3 scale is p^" +
                            (m3 == kInfVal ? std::string("inf") : std::to_string(m3)) +
                            " but the torus needs p^" + std::to_string(-a1));
  scale_col(w, j3, pow_p(p, m3) / w.at(2, j3));

  Q u0 = -w.at(2, j4) * pow_p(p, a1);
  Q u1 = w.at(1, j1) * pow_p(p, -a2);
  Q delta = u0 - u1;
  require_integral(delta, p, "the u-shift");
  add_col(w, j4, j3, delta);
  Q u = u1;

  Q r = w.at(3, j1) * pow_p(p, a2 + 1);
  Q t = w.at(3, j2) * pow_p(p, a2 + 1);
  Q s = w.at(2, j1) * pow_p(p, a1) + u * r;

  Q w22_target = (q_of(p) * r - u * t) * pow_p(p, -a1);
  Q beta = (w22_target - w.at(2, j2)) * pow_p(p, a1);
  require_integral(beta, p, "the r-shift");
  add_col(w, j2, j3, beta);

  IwasawaSp4 out;
  out.a1 = a1;
  out.a2 = a2;
  out.u = u;
  out.s = s;
  out.r = r;
  out.t = t;

  QMat mt = cols_to_matrix(w, {j1, j2, j3, j4});
  QMat shaped = sp4_torus(p, a1, a2) * sp4_nu_L1(p, u) * sp4_nsrt_L1(p, s, r, t);
  if (mt != shaped)
    throw std::logic_error("iwasawa: shaped basis does not match the factor product");

  QMat ht = mt.inverse() * gt;
  if (!matrix_integral(ht, p)) throw std::logic_error("iwasawa: compact part not integral");

  out.torus = sp4_torus(p, a1, a2);
  out.n1 = conj(tf, sp4_nu_L1(p, u), tfinv);
  out.n2 = conj(tf, sp4_nsrt_L1(p, s, r, t), tfinv);
  out.k = conj(tf, ht, tfinv);
  if (!in_G_L1_2(out.k, p)) throw std::logic_error("iwasawa: compact part leaves the stabilizer");
  if (out.torus * out.n1 * out.n2 * out.k != g)
    throw std::logic_error("iwasawa: reconstruction failed");
  return out;
}

}  // namespace

IwasawaSp4 iwasawa_sp4(const QMat& g, long p, IwasawaVariant variant) {
  if (g.rows != 4 || g.cols != 4) throw std::invalid_argument("iwasawa_sp4: need a 4x4 matrix");
  if (!is_symplectic(g)) throw std::invalid_argument("iwasawa_sp4: matrix is not symplectic");
  return variant == IwasawaVariant::self_dual ? iwasawa_sp4_self_dual(g, p)
                                              : iwasawa_sp4_L1(g, p);
}

GL2UnitDecomp gl2_unit_decompose(const QMat& theta, long p) {
  if (theta.rows != 2 || theta.cols != 2)
    throw std::invalid_argument("gl2_unit_decompose: need a 2x2 matrix");
  Q det = theta.det();
  if (det == 0) throw std::invalid_argument("gl2_unit_decompose: matrix is singular");
  const Q a = theta.at(0, 0), b = theta.at(0, 1), c = theta.at(1, 0), d = theta.at(1, 1);
  if (!matrix_integral(theta, p)) throw std::domain_error("extract p-power first");
  bool c_unit = c != 0 && valuation_nonzero(c, p) == 0;
  bool a_unit = a != 0 && valuation_nonzero(a, p) == 0;

  GL2UnitDecomp out;
  if (c_unit) {
    out.a = QMat(2, 2, {a / c, Q(-1), Q(1), Q(0)});
    out.mid = QMat(2, 2, {c, Q(0), Q(0), det / c});
    out.b = QMat(2, 2, {Q(1), d / c, Q(0), Q(1)});
  } else if (a_unit) {
    out.a = QMat(2, 2, {Q(1), Q(0), c / a, Q(1)});
    out.mid = QMat(2, 2, {a, Q(0), Q(0), det / a});
    out.b = QMat(2, 2, {Q(1), b / a, Q(0), Q(1)});
  } else {
    throw std::domain_error("extract p-power first");
  }
  if (out.a * out.mid * out.b != theta)
    throw std::logic_error("gl2_unit_decompose: reconstruction failed");
  return out;
}

bool param_equiv(ParamKind kind, long p, const std::array<Q, 4>& t1,
                 const std::array<Q, 4>& t2) {
  QMat m1, m2;
  if (kind == ParamKind::self_dual_n2) {
    m1 = sp4_nu_self_dual(t1[0]) * sp4_nsrt_self_dual(t1[1], t1[2], t1[3]);
    m2 = sp4_nu_self_dual(t2[0]) * sp4_nsrt_self_dual(t2[1], t2[2], t2[3]);
  } else {
    m1 = sp4_nu_L1(p, t1[0]) * sp4_nsrt_L1(p, t1[1], t1[2], t1[3]);
    m2 = sp4_nu_L1(p, t2[0]) * sp4_nsrt_L1(p, t2[1], t2[2], t2[3]);
  }
  return matrix_integral(m1.inverse() * m2, p);
}

}  // namespace padiq
