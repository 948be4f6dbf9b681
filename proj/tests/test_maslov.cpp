#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "padiq/characters.hpp"
#include "padiq/maslov.hpp"

using namespace padiq;

namespace {

LagrangianLine fin(long a) { return LagrangianLine::param(Q(a)); }

std::mt19937_64& rng() {
  static std::mt19937_64 r(211);
  return r;
}

LagrangianLine rand_line(bool allow_star) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5), star(0, 6);
  if (allow_star && star(rng()) == 0) return LagrangianLine::infinity();
  return LagrangianLine::param(q_of(num(rng()), den(rng())));
}

}  // namespace

TEST_CASE("kappa closed forms") {
  CHECK(maslov_kappa(fin(0), fin(1), fin(2)) == Q(-2));
  CHECK(maslov_kappa(fin(3), fin(1), LagrangianLine::infinity()) == Q(2));
  // the vertical line may sit anywhere; the coefficient only rotates
  CHECK(maslov_kappa(LagrangianLine::infinity(), fin(3), fin(1)) == Q(2));
  CHECK(maslov_kappa(fin(1), LagrangianLine::infinity(), fin(3)) == Q(2));

  // cyclic shift of a finite triple rescales kappa by a square
  for (long p : {2L, 3L, 5L, 7L}) {
    for (int i = 0; i < 30; ++i) {
      LagrangianLine a = rand_line(false), b = rand_line(false), c = rand_line(false);
      if (a == b || b == c || a == c) continue;
      Q k1 = maslov_kappa(a, b, c);
      Q k2 = maslov_kappa(b, c, a);
      CHECK(square_class(k1, p) == square_class(k2, p));
    }
  }
}

TEST_CASE("pinned index values") {
  // half-coefficient 1: even valuation at odd p
  ComplexVal v5 = maslov_index(fin(2), fin(0), LagrangianLine::infinity(), 5);
  CHECK(std::abs(v5.c() - std::complex<double>(1.0, 0.0)) < 1e-12);

  // half-coefficient 3 at p = 3: odd valuation, unit residue, 3 = 3 mod 4
  ComplexVal v3 = maslov_index(fin(6), fin(0), LagrangianLine::infinity(), 3);
  CHECK(std::abs(v3.c() - std::complex<double>(0.0, 1.0)) < 1e-12);

  // half-coefficient 21 at p = 7: 3 is a nonresidue mod 7
  ComplexVal v7 = maslov_index(fin(42), fin(0), LagrangianLine::infinity(), 7);
  CHECK(std::abs(v7.c() - std::complex<double>(0.0, -1.0)) < 1e-12);

  // half-coefficient 1/2 at p = 2 normalizes (1 + i) onto the circle
  ComplexVal v2 = maslov_index(fin(1), fin(0), LagrangianLine::infinity(), 2);
  double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(v2.c() - std::complex<double>(s, s)) < 1e-12);
}

TEST_CASE("index lies on the unit circle") {
  for (long p : {2L, 3L, 5L, 7L}) {
    int done = 0;
    while (done < 40) {
      LagrangianLine a = rand_line(true), b = rand_line(true), c = rand_line(true);
      if (a == b || b == c || a == c) continue;
      CHECK(std::abs(std::abs(maslov_index(a, b, c, p).c()) - 1.0) < 1e-12);
      ++done;
    }
  }
}

TEST_CASE("degenerate configurations throw") {
  CHECK_THROWS_WITH_AS(maslov_kappa(fin(1), fin(1), fin(2)), "degenerate configuration",
                       std::domain_error);
  CHECK_THROWS_WITH_AS(
      maslov_kappa(LagrangianLine::infinity(), fin(0), LagrangianLine::infinity()),
      "degenerate configuration", std::domain_error);
  CHECK_THROWS_AS(maslov_index(fin(0), fin(0), fin(0), 3), std::domain_error);
}

TEST_CASE("closed form matches the quadrature") {
  for (long p : {2L, 3L, 5L}) {
    int done = 0;
    while (done < 8) {
      LagrangianLine a = rand_line(true), b = rand_line(true), c = rand_line(true);
      if (a == b || b == c || a == c) continue;
      std::complex<double> closed = maslov_index(a, b, c, p).c();
      std::complex<double> integ = maslov_index_integral(a, b, c, p);
      CHECK(std::abs(closed - integ) < 1e-9);
      ++done;
    }
  }
}

TEST_CASE("swap, cycle and cocycle relations") {
  std::array<LagrangianLine, 4> base = {fin(0), fin(1), fin(2), LagrangianLine::infinity()};
  CHECK(maslov_relations_check(base, 3));
  CHECK(maslov_relations_check(base, 2));

  for (long p : {2L, 3L, 5L, 7L}) {
    int done = 0;
    while (done < 25) {
      std::array<LagrangianLine, 4> ls = {rand_line(true), rand_line(true), rand_line(true),
                                          rand_line(true)};
      bool distinct = true;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (ls[i] == ls[j]) distinct = false;
      if (!distinct) continue;
      CHECK(maslov_relations_check(ls, p));
      ++done;
    }
  }
}

TEST_CASE("normalization note only at p = 2") {
  CHECK(maslov_normalization_note(2).has_value());
  CHECK(!maslov_normalization_note(3).has_value());
  CHECK(!maslov_normalization_note(7).has_value());
}
