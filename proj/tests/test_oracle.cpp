#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "padiq/oracle.hpp"

using namespace padiq;

TEST_CASE("pure character oracle") {
  PrimeCtx two(2, 8);
  IntegrandSpec s;
  s.kind = IntegrandSpec::Kind::pure_character;
  s.xi = q_of(1, 2);  // nontrivial on Z_2, so the ball integral cancels
  s.domain = BallDomain{{Q(0)}, {0}};
  CHECK(std::abs(ball_sum_oracle(two, s, 4).c()) < 1e-12);

  for (long p : {2L, 3L, 5L}) {
    PrimeCtx ctx(p, 8);
    IntegrandSpec t;
    t.kind = IntegrandSpec::Kind::pure_character;
    t.xi = Q(0);
    t.domain = BallDomain{{Q(0)}, {0}};
    CHECK(std::abs(ball_sum_oracle(ctx, t, 3).c() - std::complex<double>(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("quadratic oracle agrees with shell sums") {
  PrimeCtx ctx(3, 8);
  IntegrandSpec s;
  s.kind = IntegrandSpec::Kind::quadratic_character;
  s.a = Q(1);
  s.b = Q(0);
  s.domain = BallDomain{{Q(0)}, {-3}};
  std::complex<double> flat = ball_sum_oracle(ctx, s, 6).c();
  std::complex<double> shells{0.0, 0.0};
  for (long nu = -40; nu <= 3; ++nu) shells += quadratic_shell_integral(3, Q(1), Q(0), nu);
  CHECK(std::abs(flat - shells) < 1e-12);
}

TEST_CASE("cell budget is enforced") {
  PrimeCtx ctx(5, 8);
  IntegrandSpec s;
  s.kind = IntegrandSpec::Kind::pure_character;
  s.domain = BallDomain{{Q(0)}, {0}};
  CHECK_THROWS(ball_sum_oracle(ctx, s, 20, 1000));
}

TEST_CASE("generic ball_sum on a locally constant integrand") {
  PrimeCtx ctx(3, 6);
  BallDomain dom{{Q(0), Q(0)}, {0, 0}};
  // indicator of the sublattice 3Zp x Zp has mass 1/3
  auto f = [](const std::vector<Q>& x) {
    return std::complex<double>(valuation(x[0], 3).value_or(1000) >= 1 ? 1.0 : 0.0, 0.0);
  };
  CHECK(std::abs(ball_sum(ctx, dom, 2, f) - std::complex<double>(1.0 / 3.0, 0.0)) < 1e-12);
}

TEST_CASE("line integral equals ball integral past the support radius") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<long> unit(1, 20), vdist(-2, 2);
  for (long p : {2L, 3L, 5L}) {
    for (int i = 0; i < 8; ++i) {
      long u = unit(rng);
      while (u % p == 0) ++u;
      Q a = q_of(u);
      long e = vdist(rng);
      for (long k = 0; k < std::abs(e); ++k) a = e > 0 ? Q(a * p) : Q(a / p);
      std::complex<double> line = quadratic_line_integral(p, a, Q(0));
      // shells past the certified radius cancel, so a wide ball suffices
      std::complex<double> wide = quadratic_ball_integral(p, a, Q(0), Q(0), -6);
      CHECK(std::abs(line - wide) < 1e-9);
    }
  }
}

TEST_CASE("constancy depth certifies the flat sum") {
  for (long p : {2L, 3L}) {
    Q a = q_of(1, p * p);  // valuation -2
    int d = quadratic_constancy_depth(p, a, Q(1), Q(0), 0);
    CHECK(d >= 1);
    PrimeCtx ctx(p, 8);
    IntegrandSpec s;
    s.kind = IntegrandSpec::Kind::quadratic_character;
    s.a = a;
    s.b = Q(1);
    s.domain = BallDomain{{Q(0)}, {0}};
    std::complex<double> at_d = ball_sum_oracle(ctx, s, d).c();
    std::complex<double> deeper = ball_sum_oracle(ctx, s, d + 2).c();
    CHECK(std::abs(at_d - deeper) < 1e-12);
  }
}
