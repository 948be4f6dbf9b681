#include <doctest.h>

#include <random>
#include <set>

#include "padiq/symplectic.hpp"

using namespace padiq;

namespace {

Q rq(std::mt19937_64& rng, long lo = -20, long hi = 20, long dmax = 12) {
  std::uniform_int_distribution<long> num(lo, hi), den(1, dmax);
  return q_of(num(rng), den(rng));
}

Q rz(std::mt19937_64& rng, long lo = -9, long hi = 9) {
  std::uniform_int_distribution<long> v(lo, hi);
  return Q(v(rng));
}

Q pq(long p, long e) {
  Q out(1), b = q_of(p);
  for (long i = 0; i < (e >= 0 ? e : -e); ++i) out *= b;
  return e >= 0 ? out : Q(1) / out;
}

QMat rand_sl2z(std::mt19937_64& rng) {
  QMat up(2, 2, {Q(1), rz(rng), Q(0), Q(1)});
  QMat low(2, 2, {Q(1), Q(0), rz(rng), Q(1)});
  return up * low * up;
}

}  // namespace

TEST_CASE("symplectic predicate") {
  CHECK(is_symplectic(QMat::identity(4)));
  CHECK(is_symplectic(QMat::J0(2)));
  CHECK(!is_symplectic(QMat(2, 2, {Q(2), Q(0), Q(0), Q(1)})));
  CHECK_THROWS(is_symplectic(QMat(3, 3)));
}

TEST_CASE("integral symplectic predicate") {
  CHECK(in_sp_zp(QMat::J0(2), 3));
  QMat g(2, 2, {Q(3), Q(0), Q(0), q_of(1, 3)});
  CHECK(is_symplectic(g));
  CHECK(!in_sp_zp(g, 3));
}

TEST_CASE("weyl generators on the torus") {
  TorusElement t({Q(2), Q(3)});
  TorusElement s1 = weyl_apply(1, t);
  CHECK(s1.x == std::vector<Q>{Q(3), Q(2)});
  TorusElement s2 = weyl_apply(2, t);
  CHECK(s2.x == std::vector<Q>{Q(2), q_of(1, 3)});
  CHECK_THROWS(weyl_apply(0, t));
  CHECK_THROWS(weyl_apply(3, t));

  // orbit of a generic element has 2^n n! points
  std::set<std::vector<Q>> orbit = {t.x};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& v : std::set<std::vector<Q>>(orbit))
      for (std::size_t i = 1; i <= 2; ++i) {
        auto w = weyl_apply(i, TorusElement(v)).x;
        if (orbit.insert(w).second) grew = true;
      }
  }
  CHECK(orbit.size() == 8);
}

TEST_CASE("simple roots") {
  TorusElement t({Q(4), Q(2)});
  CHECK(simple_root(1, t) == Q(2));
  TorusElement s({Q(3)});
  CHECK(simple_root(1, s) == Q(9));
  TorusElement id({Q(1), Q(1)});
  CHECK(simple_root(1, id) == Q(1));
  CHECK(simple_root(2, id) == Q(1));
}

TEST_CASE("torus matrix shape") {
  TorusElement t({Q(2), Q(3)});
  QMat m = t.matrix();
  CHECK(m.at(0, 0) == Q(2));
  CHECK(m.at(1, 1) == Q(3));
  CHECK(m.at(2, 2) == q_of(1, 2));
  CHECK(m.at(3, 3) == q_of(1, 3));
  CHECK(is_symplectic(m));
}

TEST_CASE("parabolic factorization") {
  auto id = parabolic_factorize(QMat::identity(4), 1);
  REQUIRE(id.in_subgroup);
  CHECK(id.factors->xi1 == QMat::identity(4));
  CHECK(id.factors->xi4 == QMat::identity(4));

  // a pure xi4 input comes back as (I, I, I, xi4)
  QMat xi4 = QMat::identity(4);
  xi4.at(0, 2) = Q(5);
  REQUIRE(is_symplectic(xi4));
  auto r4 = parabolic_factorize(xi4, 1);
  REQUIRE(r4.in_subgroup);
  CHECK(r4.factors->xi1 == QMat::identity(4));
  CHECK(r4.factors->xi2 == QMat::identity(4));
  CHECK(r4.factors->xi3 == QMat::identity(4));
  CHECK(r4.factors->xi4 == xi4);

  // J0 moves e1 out of its own stabilized flag
  auto rj = parabolic_factorize(QMat::J0(2), 1);
  CHECK(!rj.in_subgroup);
  CHECK(!rj.violating_block.empty());

  CHECK_THROWS(parabolic_factorize(QMat(4, 4), 1));
}

TEST_CASE("filtration strata") {
  CHECK(filtration_stratum(QMat(4, 4), 1) == -2);

  // symmetric u-block sits at the bottom of the filtration
  QMat x(4, 4);
  x.at(0, 2) = Q(7);
  CHECK(x.transpose() * QMat::J0(2) + QMat::J0(2) * x == QMat(4, 4));
  CHECK(filtration_stratum(x, 1) == -2);

  // t-block requires the top stratum
  QMat y(4, 4);
  y.at(1, 0) = Q(1);
  y.at(2, 3) = Q(-1);
  CHECK(y.transpose() * QMat::J0(2) + QMat::J0(2) * y == QMat(4, 4));
  CHECK(filtration_stratum(y, 1) == 1);

  QMat bad(4, 4);
  bad.at(0, 0) = Q(1);
  CHECK_THROWS(filtration_stratum(bad, 1));
}

TEST_CASE("sl2 iwasawa examples") {
  long p = 5;
  QMat d(2, 2, {Q(p), Q(0), Q(0), q_of(1, p)});
  auto r = iwasawa_sl2(d, p);
  CHECK(r.a == 1);
  CHECK(r.u == Q(0));
  CHECK(r.h == QMat::identity(2));

  QMat j = QMat::J0(1);
  auto rj = iwasawa_sl2(j, p);
  CHECK(rj.a == 0);
  CHECK(rj.u == Q(0));
  CHECK(rj.h == j);

  CHECK_THROWS(iwasawa_sl2(QMat(2, 2, {Q(2), Q(0), Q(0), Q(1)}), p));
}

TEST_CASE("sl2 iwasawa round trip") {
  std::mt19937_64 rng(97);
  for (long p : {2L, 3L, 5L}) {
    for (int i = 0; i < 60; ++i) {
      std::uniform_int_distribution<long> ea(-3, 3);
      long a = ea(rng);
      QMat d(2, 2, {pq(p, a), Q(0), Q(0), pq(p, -a)});
      QMat nu(2, 2, {Q(1), rq(rng), Q(0), Q(1)});
      QMat g = d * nu * rand_sl2z(rng);
      auto r = iwasawa_sl2(g, p);
      QMat da(2, 2, {pq(p, r.a), Q(0), Q(0), pq(p, -r.a)});
      QMat nb(2, 2, {Q(1), r.u, Q(0), Q(1)});
      CHECK(da * nb * r.h == g);
      CHECK(in_sp_zp(r.h, p));
    }
  }
}

TEST_CASE("sp4 iwasawa identity and shaped input") {
  long p = 3;
  auto r = iwasawa_sp4(QMat::identity(4), p, IwasawaVariant::self_dual);
  CHECK(r.a1 == 0);
  CHECK(r.a2 == 0);
  CHECK(r.torus * r.n1 * r.n2 * r.k == QMat::identity(4));

  std::mt19937_64 rng(101);
  for (int i = 0; i < 40; ++i) {
    std::uniform_int_distribution<long> ea(-2, 2);
    QMat g = sp4_torus(p, ea(rng), ea(rng)) * sp4_nu_self_dual(rq(rng)) *
             sp4_nsrt_self_dual(rq(rng), rq(rng), rq(rng));
    auto d = iwasawa_sp4(g, p, IwasawaVariant::self_dual);
    CHECK(d.torus * d.n1 * d.n2 * d.k == g);
    CHECK(in_sp_zp(d.k, p));
  }
  // the L1-shaped unipotents preserve a rescaled pairing; conjugating by
  // diag(1,1,1/p,1) brings them into the standard frame
  QMat tf = QMat::identity(4);
  tf.at(2, 2) = q_of(1, p);
  QMat tfinv = tf.inverse();
  for (int i = 0; i < 40; ++i) {
    std::uniform_int_distribution<long> ea(-2, 2);
    QMat g = sp4_torus(p, ea(rng), ea(rng)) * tf * sp4_nu_L1(p, rq(rng)) *
             sp4_nsrt_L1(p, rq(rng), rq(rng), rq(rng)) * tfinv;
    REQUIRE(is_symplectic(g));
    auto d = iwasawa_sp4(g, p, IwasawaVariant::L1);
    CHECK(d.torus * d.n1 * d.n2 * d.k == g);
    CHECK(in_G_L1_2(d.k, p));
  }
}

TEST_CASE("gl2 decomposition over the unit cases") {
  long p = 5;
  QMat theta(2, 2, {Q(3), Q(0), Q(0), Q(7)});
  auto r = gl2_unit_decompose(theta, p);
  CHECK(r.a == QMat::identity(2));
  CHECK(r.mid == theta);
  CHECK(r.b == QMat::identity(2));

  QMat w = QMat::J0(1);
  auto rw = gl2_unit_decompose(w, p);
  CHECK(rw.a * rw.mid * rw.b == w);
  CHECK(in_sp_zp(rw.a, p));
  CHECK(in_sp_zp(rw.b, p));

  std::mt19937_64 rng(103);
  for (int i = 0; i < 60; ++i) {
    std::uniform_int_distribution<long> em(0, 2);
    QMat t = rand_sl2z(rng);
    t.at(0, 0) = t.at(0, 0) * pq(p, em(rng));  // may lose det 1, keep unit column entry
    if (t.det() == 0) continue;
    auto is_unit = [&](const Q& x) { return x != 0 && valuation_nonzero(x, p) == 0; };
    if (!is_unit(t.at(0, 0)) && !is_unit(t.at(1, 0))) continue;
    auto d = gl2_unit_decompose(t, p);
    CHECK(d.a * d.mid * d.b == t);
    CHECK(in_sp_zp(d.a, p));
    CHECK(in_sp_zp(d.b, p));
    CHECK(d.mid.at(0, 1) == Q(0));
    CHECK(d.mid.at(1, 0) == Q(0));
    CHECK(d.mid.at(0, 0) * d.mid.at(1, 1) == t.det());
  }

  CHECK_THROWS(gl2_unit_decompose(QMat(2, 2, {Q(p), Q(0), Q(0), Q(p)}), p));
}

TEST_CASE("parameter equivalence") {
  std::array<Q, 4> zero = {Q(0), Q(0), Q(0), Q(0)};
  std::array<Q, 4> u1 = {Q(1), Q(0), Q(0), Q(0)};
  std::array<Q, 4> up = {Q(3), Q(0), Q(0), Q(0)};
  std::array<Q, 4> off = {q_of(1, 3), Q(0), Q(0), Q(0)};
  for (auto kind : {ParamKind::self_dual_n2, ParamKind::L1_n2}) {
    CHECK(param_equiv(kind, 3, zero, zero));
    CHECK(!param_equiv(kind, 3, off, zero));
  }
  CHECK(param_equiv(ParamKind::self_dual_n2, 3, zero, u1));
  // the L1 relation weights the u-shift by p
  CHECK(!param_equiv(ParamKind::L1_n2, 3, zero, u1));
  CHECK(param_equiv(ParamKind::L1_n2, 3, zero, up));

  // symmetric and transitive on a random sample
  std::mt19937_64 rng(107);
  long p = 3;
  auto rt = [&]() {
    std::array<Q, 4> t;
    for (auto& v : t) {
      std::uniform_int_distribution<int> pick(0, 3);
      int c = pick(rng);
      v = c == 0 ? q_of(1, p) : Q(c - 1);
    }
    return t;
  };
  std::vector<std::array<Q, 4>> sample;
  for (int i = 0; i < 12; ++i) sample.push_back(rt());
  for (auto kind : {ParamKind::self_dual_n2, ParamKind::L1_n2}) {
    for (const auto& t1 : sample) {
      CHECK(param_equiv(kind, p, t1, t1));
      for (const auto& t2 : sample) {
        bool ab = param_equiv(kind, p, t1, t2);
        CHECK(ab == param_equiv(kind, p, t2, t1));
        for (const auto& t3 : sample)
          if (ab && param_equiv(kind, p, t2, t3)) CHECK(param_equiv(kind, p, t1, t3));
      }
    }
  }
}
