#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "padiq/characters.hpp"
#include "padiq/oracle.hpp"
#include "padiq/padic.hpp"

using namespace padiq;

namespace {

Q rv(std::mt19937_64& rng, long p, long vlo, long vhi) {
  std::uniform_int_distribution<long> num(1, 40), den(1, 40), v(vlo, vhi), sign(0, 1);
  long n = num(rng);
  while (n % p == 0) ++n;
  long d = den(rng);
  while (d % p == 0) ++d;
  Q u = q_of(sign(rng) ? n : -n, d);
  long e = v(rng);
  Q pw(1);
  for (long i = 0; i < std::abs(e); ++i) pw *= p;
  return e >= 0 ? Q(u * pw) : Q(u / pw);
}

}  // namespace

TEST_CASE("character values") {
  CHECK(character(Q(1), Q(1, 4), 2).q == Q(1, 4));
  CHECK(character(Q(3), Q(7), 5).q == 0);
  CHECK(character(Q(1), Q(2, 5) + 3, 5).q == Q(2, 5));
}

TEST_CASE("character is a homomorphism, trivial exactly on Zp") {
  std::mt19937_64 rng(23);
  for (long p : {2L, 3L, 5L, 7L}) {
    for (int i = 0; i < 300; ++i) {
      Q u = rv(rng, p, -3, 3), x = rv(rng, p, -3, 3), y = rv(rng, p, -3, 3);
      CHECK(character(u, x, p) * character(u, y, p) == character(u, x + y, p));
      bool trivial = character(u, x, p).q == 0;
      CHECK(trivial == (valuation_nonzero(u * x, p) >= 0));
    }
  }
}

TEST_CASE("phase sums cancel exactly") {
  // 1 + i + i^2 + i^3 = 0, detected in the cyclotomic representation
  PhaseSum s = PhaseSum::zero();
  for (int k = 0; k < 4; ++k) s += PhaseSum::of(Phase(Q(k, 4)), Q(1));
  CHECK(s.is_zero());
  PhaseSum t = PhaseSum::of(Phase(Q(1, 3)), Q(2));
  CHECK(!t.is_zero());
  CHECK(std::abs(t.conj().value() - std::conj(t.value())) < 1e-12);
}

TEST_CASE("lambda table rows") {
  ComplexVal l1 = lambda_factor(Q(1), 5);
  CHECK(l1.c().real() == doctest::Approx(1.0));
  CHECK(l1.c().imag() == doctest::Approx(0.0));

  ComplexVal l5 = lambda_factor(Q(5), 5);
  CHECK(l5.c().real() == doctest::Approx(1.0));
  CHECK(l5.c().imag() == doctest::Approx(0.0));

  ComplexVal l2 = lambda_factor(Q(2), 2);
  CHECK(l2.c().real() == doctest::Approx(1.0));
  CHECK(l2.c().imag() == doctest::Approx(1.0));

  CHECK_THROWS_AS(lambda_factor(Q(0), 3), std::domain_error);
}

TEST_CASE("lambda modulus by parity of p") {
  std::mt19937_64 rng(29);
  for (long p : {2L, 3L, 5L, 7L}) {
    double target = p == 2 ? std::sqrt(2.0) : 1.0;
    for (int i = 0; i < 120; ++i) {
      Q a = rv(rng, p, -6, 6);
      CHECK(std::abs(std::abs(lambda_factor(a, p).c()) - target) < 1e-12);
      CHECK(std::abs(std::abs(lambda_normalized(a, p).c()) - 1.0) < 1e-12);
      CHECK(!lambda_case(a, p).empty());
    }
  }
}

TEST_CASE("gauss integral closed form") {
  ComplexVal g5 = gauss_integral(Q(1), Q(0), 5);
  CHECK(std::abs(g5.c() - std::complex<double>(1.0, 0.0)) < 1e-12);

  ComplexVal g2 = gauss_integral(Q(1), Q(0), 2);
  CHECK(std::abs(g2.c() - std::complex<double>(1.0, 1.0)) < 1e-12);

  ComplexVal gp = gauss_integral(Q(5), Q(0), 5);
  CHECK(std::abs(gp.c() - std::complex<double>(std::sqrt(5.0), 0.0)) < 1e-12);

  CHECK_THROWS_AS(gauss_integral(Q(0), Q(1), 3), std::domain_error);
}

TEST_CASE("gauss integral matches the quadrature oracle") {
  std::mt19937_64 rng(31);
  for (long p : {2L, 3L, 5L, 7L}) {
    for (int i = 0; i < 12; ++i) {
      Q a = rv(rng, p, -3, 3);
      Q b = i % 3 == 0 ? Q(0) : rv(rng, p, -3, 3);
      std::complex<double> closed = gauss_integral(a, b, p).c();
      std::complex<double> oracle = quadratic_line_integral(p, a, b);
      CHECK(std::abs(closed - oracle) < 1e-9);
    }
  }
}

TEST_CASE("shell integral three cases") {
  CHECK(std::abs(shell_integral(Q(0), 0, 3).c() - std::complex<double>(2.0 / 3.0, 0.0)) < 1e-15);
  CHECK(std::abs(shell_integral(Q(1, 5), 0, 5).c() - std::complex<double>(-0.2, 0.0)) < 1e-15);
  CHECK(std::abs(shell_integral(Q(1, 9), 0, 3).c()) < 1e-15);
  // shell sums telescope to the ball character integral
  for (long p : {2L, 3L, 5L}) {
    std::complex<double> acc{0.0, 0.0};
    for (long nu = -40; nu <= 0; ++nu) acc += shell_integral(Q(1), nu, p).c();
    CHECK(std::abs(acc - std::complex<double>(1.0, 0.0)) < 1e-9);  // xi = 1, |xi| = 1
    acc = {0.0, 0.0};
    for (long nu = -40; nu <= 1; ++nu) acc += shell_integral(Q(1, p), nu, p).c();
    CHECK(std::abs(acc) < 1e-9);  // |xi| = p pushes the mass out
  }
}

TEST_CASE("radial transform of a truncated indicator") {
  std::map<long, ComplexVal> profile;
  for (long nu = -20; nu <= 0; ++nu) profile[nu] = ComplexVal::approx({1.0, 0.0});
  CHECK(std::abs(radial_transform(profile, Q(1), 3).c() - std::complex<double>(1.0, 0.0)) < 1e-9);
  CHECK(std::abs(radial_transform(profile, Q(1, 3), 3).c()) < 1e-9);
  std::map<long, ComplexVal> zero;
  CHECK(std::abs(radial_transform(zero, Q(1), 3).c()) < 1e-15);
  CHECK_THROWS_AS(radial_transform(profile, Q(0), 3), std::domain_error);
}

TEST_CASE("constant c") {
  for (long p : {3L, 5L, 7L}) {
    ComplexVal c = constant_c(p);
    CHECK(c.c() == std::complex<double>(1.0, 0.0));
  }
  CHECK(constant_c(2).c() == std::complex<double>(0.5, 0.0));
}
