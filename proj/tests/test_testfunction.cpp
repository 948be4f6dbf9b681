#include <doctest.h>

#include <cmath>
#include <random>

#include "padiq/matrix.hpp"
#include "padiq/testfunction.hpp"

using namespace padiq;

namespace {

Q pq(long p, long e) {
  Q out(1), b = q_of(p);
  for (long i = 0; i < (e >= 0 ? e : -e); ++i) out *= b;
  return e >= 0 ? out : Q(1) / out;
}

TestFunction rand_tf(std::mt19937_64& rng, long p, std::size_t n) {
  std::uniform_int_distribution<long> natoms(1, 3), sc(-2, 2), num(-6, 6), ph(0, 7);
  TestFunction f{p, n, {}};
  long count = natoms(rng);
  for (long k = 0; k < count; ++k) {
    Atom a;
    long c = num(rng);
    a.coeff = PhaseSum::of(Phase(q_of(ph(rng), 8)), q_of(c == 0 ? 1 : c, 3));
    for (std::size_t i = 0; i < n; ++i) {
      a.scale.push_back(sc(rng));
      a.center.push_back(num(rng) * pq(p, sc(rng)));
      a.modulation.push_back(num(rng) * pq(p, sc(rng)));
    }
    f.atoms.push_back(std::move(a));
  }
  return canonicalize(f);
}

}  // namespace

TEST_CASE("group law on the double cover coordinates") {
  for (long p : {2L, 3L, 5L}) {
    HeisenbergElt u{{Q(1), Q(0)}, Phase()};
    HeisenbergElt v{{Q(0), Q(1)}, Phase()};
    HeisenbergElt w = h_mul(u, v, p);
    CHECK(w.z == std::vector<Q>{Q(1), Q(1)});
    CHECK(w.phase == (p == 2 ? Phase(q_of(1, 2)) : Phase()));

    HeisenbergElt e = h_mul(w, h_inverse(w), p);
    CHECK(e.z == std::vector<Q>{Q(0), Q(0)});
    CHECK(e.phase == Phase());
  }

  std::mt19937_64 rng(131);
  std::uniform_int_distribution<long> num(-8, 8), den(1, 6);
  auto relt = [&]() {
    HeisenbergElt g;
    g.z = {q_of(num(rng), den(rng)), q_of(num(rng), den(rng))};
    g.phase = Phase(q_of(num(rng), den(rng)));
    return g;
  };
  for (long p : {2L, 3L}) {
    for (int i = 0; i < 40; ++i) {
      HeisenbergElt a = relt(), b = relt(), c = relt();
      HeisenbergElt lhs = h_mul(h_mul(a, b, p), c, p);
      HeisenbergElt rhs = h_mul(a, h_mul(b, c, p), p);
      CHECK(lhs.z == rhs.z);
      CHECK(lhs.phase == rhs.phase);
    }
  }
}

TEST_CASE("schrodinger action basics") {
  long p = 5;
  TestFunction one = TestFunction::indicator(p, 1);

  // central elements act by the scalar
  HeisenbergElt central{{Q(0), Q(0)}, Phase(q_of(1, 3))};
  TestFunction scaled = schrodinger_apply(central, one);
  CHECK(tf_equal(scaled, tf_scale(one, PhaseSum::of(Phase(q_of(1, 3)), Q(1)))));

  // integral shifts leave the unit ball indicator alone
  HeisenbergElt shift{{Q(1), Q(0)}, Phase()};
  CHECK(tf_equal(schrodinger_apply(shift, one), one));

  // a 1/p shift moves the support off the unit ball
  HeisenbergElt small{{q_of(1, p), Q(0)}, Phase()};
  TestFunction moved = schrodinger_apply(small, one);
  CHECK(tf_eval(moved, {q_of(-1, p)}).re == doctest::Approx(1.0));
  CHECK(std::abs(tf_eval(moved, {Q(0)}).c()) == doctest::Approx(0.0));
}

TEST_CASE("commutation of translations and modulations") {
  for (long p : {2L, 3L, 5L}) {
    TestFunction psi = TestFunction::indicator(p, 1);
    HeisenbergElt gz{{q_of(1, p), Q(0)}, Phase()};
    HeisenbergElt gw{{Q(0), q_of(1, p)}, Phase()};
    TestFunction lhs = schrodinger_apply(gz, schrodinger_apply(gw, psi));
    TestFunction rhs = schrodinger_apply(gw, schrodinger_apply(gz, psi));
    Q pairing = symp_pair(gz.z, gw.z);
    CHECK(pairing == Q(1) / Q(p * p));
    TestFunction rhs_fixed = tf_scale(rhs, PhaseSum::of(Phase(frac_part(pairing, p)), Q(1)));
    CHECK(tf_equal(lhs, rhs_fixed));
    CHECK(!tf_equal(lhs, rhs));
  }
}

TEST_CASE("schrodinger respects the group law") {
  std::mt19937_64 rng(137);
  std::uniform_int_distribution<long> num(-4, 4);
  for (long p : {2L, 3L}) {
    for (int i = 0; i < 12; ++i) {
      HeisenbergElt g1{{q_of(num(rng), p), q_of(num(rng), p)}, Phase(q_of(num(rng), 8))};
      HeisenbergElt g2{{q_of(num(rng), p), q_of(num(rng), p)}, Phase(q_of(num(rng), 8))};
      TestFunction psi = rand_tf(rng, p, 1);
      TestFunction two_step = schrodinger_apply(g1, schrodinger_apply(g2, psi));
      TestFunction one_step = schrodinger_apply(h_mul(g1, g2, p), psi);
      CHECK(tf_equal(two_step, one_step));
    }
  }
}

TEST_CASE("fourier transform on atoms") {
  for (long p : {2L, 3L, 5L}) {
    TestFunction one = TestFunction::indicator(p, 1);
    CHECK(tf_equal(fourier(one), one));

    // indicator of p^2 Zp spreads to the ball of radius p^2 with mass p^-2
    Atom a;
    a.coeff = PhaseSum::one();
    a.center = {Q(0)};
    a.scale = {2};
    a.modulation = {Q(0)};
    TestFunction small = TestFunction::single(p, a);
    Atom b;
    b.coeff = PhaseSum::real(q_of(1, p * p));
    b.center = {Q(0)};
    b.scale = {-2};
    b.modulation = {Q(0)};
    CHECK(tf_equal(fourier(small), TestFunction::single(p, b)));
  }

  std::mt19937_64 rng(139);
  for (long p : {2L, 3L, 5L}) {
    for (int i = 0; i < 15; ++i) {
      TestFunction f = rand_tf(rng, p, 1);
      CHECK(tf_equal(inverse_fourier(fourier(f)), f));
      // Plancherel, exactly
      CHECK(tf_inner_sum(f, f).equals(tf_inner_sum(fourier(f), fourier(f))));
    }
  }
}

TEST_CASE("symplectic fourier") {
  long p = 3;
  TestFunction flat = TestFunction::indicator(p, 2);
  CHECK(tf_equal(symplectic_fourier(flat), flat));
  CHECK(tf_is_zero(symplectic_fourier(TestFunction::zero(p, 2))));

  std::mt19937_64 rng(149);
  for (int i = 0; i < 10; ++i) {
    TestFunction f = rand_tf(rng, p, 2);
    TestFunction fs = symplectic_fourier(f);
    TestFunction ff = fourier(f);
    std::uniform_int_distribution<long> num(-6, 6), sc(-2, 2);
    for (int k = 0; k < 8; ++k) {
      Q z1 = num(rng) * pq(p, sc(rng)), z2 = num(rng) * pq(p, sc(rng));
      // F_s[f](J0 z) = F[f](z)
      CHECK(tf_eval_sum(fs, {z2, -z1}).equals(tf_eval_sum(ff, {z1, z2})));
    }
  }
  CHECK_THROWS(symplectic_fourier(TestFunction::indicator(p, 1)));
}

TEST_CASE("inner products") {
  long p = 3;
  TestFunction one = TestFunction::indicator(p, 1);
  CHECK(tf_inner_sum(one, one).equals(PhaseSum::one()));

  std::mt19937_64 rng(151);
  for (int i = 0; i < 15; ++i) {
    TestFunction f = rand_tf(rng, p, 1), g = rand_tf(rng, p, 1);
    CHECK(tf_inner_sum(f, g).conj().equals(tf_inner_sum(g, f)));
    auto fg = tf_inner_sum(f, g).value();
    auto ff = tf_inner_sum(f, f).value();
    auto gg = tf_inner_sum(g, g).value();
    CHECK(std::norm(fg) <= ff.real() * gg.real() + 1e-9);
    CHECK(std::abs(ff.imag()) < 1e-12);
  }
}

TEST_CASE("evaluation") {
  long p = 3;
  TestFunction one = TestFunction::indicator(p, 1);
  CHECK(tf_eval(one, {Q(2)}).re == doctest::Approx(1.0));
  CHECK(std::abs(tf_eval(one, {q_of(1, 3)}).c()) == doctest::Approx(0.0));

  Atom a;
  a.coeff = PhaseSum::one();
  a.center = {Q(0)};
  a.scale = {0};
  a.modulation = {q_of(1, 3)};
  TestFunction mod = TestFunction::single(p, a);
  CHECK(tf_eval_sum(mod, {Q(1)}).equals(PhaseSum::of(Phase(q_of(1, 3)), Q(1))));
  CHECK(tf_eval_sum(mod, {Q(3)}).equals(PhaseSum::one()));
}

TEST_CASE("canonical form decides equality") {
  long p = 3;
  TestFunction one = TestFunction::indicator(p, 1);

  // splitting Zp into its three cosets changes nothing
  TestFunction split{p, 1, {}};
  for (long r = 0; r < p; ++r) {
    Atom a;
    a.coeff = PhaseSum::one();
    a.center = {Q(r)};
    a.scale = {1};
    a.modulation = {Q(0)};
    split.atoms.push_back(std::move(a));
  }
  CHECK(tf_equal(split, one));

  // modulation by chi(p x) is invisible on Zp
  Atom m;
  m.coeff = PhaseSum::one();
  m.center = {Q(0)};
  m.scale = {0};
  m.modulation = {Q(p)};
  TestFunction trivial_mod = TestFunction::single(p, m);
  CHECK(trivial_mod.atoms.size() == 1);
  CHECK(trivial_mod.atoms[0].modulation[0] == Q(0));
  CHECK(tf_equal(trivial_mod, one));

  // zero coefficients vanish from the canonical form
  TestFunction with_zero = one;
  Atom z;
  z.coeff = PhaseSum::zero();
  z.center = {Q(1)};
  z.scale = {1};
  z.modulation = {Q(0)};
  with_zero.atoms.push_back(std::move(z));
  CHECK(canonicalize(with_zero).atoms.size() == 1);
  CHECK(tf_equal(with_zero, one));
}

TEST_CASE("scale reduction") {
  CHECK(reduce_mod_scale(q_of(7, 8), -1, 2) == q_of(3, 8));
  CHECK(reduce_mod_scale(Q(5), 0, 3) == Q(0));
  CHECK(reduce_mod_scale(q_of(1, 3), 0, 3) == q_of(1, 3));
  CHECK(reduce_mod_scale(Q(0), 2, 5) == Q(0));
}
