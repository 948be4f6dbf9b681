#include <benchmark/benchmark.h>

#include "padiq/characters.hpp"
#include "padiq/maslov.hpp"
#include "padiq/oracle.hpp"
#include "padiq/quadform.hpp"
#include "padiq/symplectic.hpp"
#include "padiq/weyl.hpp"

using namespace padiq;

namespace {

Q pq(long p, long e) {
  Q out(1), b = q_of(p);
  for (long i = 0; i < (e >= 0 ? e : -e); ++i) out *= b;
  return e >= 0 ? out : Q(1) / out;
}

void bm_frac_part(benchmark::State& state) {
  Q x = q_of(123456789, 512) * pq(3, -9);
  for (auto _ : state) {
    Q f = frac_part(x, 3);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(bm_frac_part);

void bm_hilbert_symbol(benchmark::State& state) {
  Q a = q_of(3675, 1331), b = q_of(-2744, 405);
  for (auto _ : state) {
    int v = hilbert_symbol(a, b, 7);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_hilbert_symbol);

void bm_diagonalize(benchmark::State& state) {
  QMat m(4, 4,
         {Q(2), Q(1), Q(0), q_of(1, 3), Q(1), Q(-1), Q(3), Q(0), Q(0), Q(3), Q(5), Q(2),
          q_of(1, 3), Q(0), Q(2), Q(-4)});
  for (auto _ : state) {
    auto d = diagonalize(m);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(bm_diagonalize);

void bm_fourier_roundtrip(benchmark::State& state) {
  TestFunction f{3, 1, {}};
  for (long k = 0; k < 3; ++k) {
    Atom a;
    a.coeff = PhaseSum::of(Phase(q_of(k, 8)), q_of(k + 1, 3));
    a.center = {q_of(k, 3)};
    a.scale = {k - 1};
    a.modulation = {q_of(k, 9)};
    f.atoms.push_back(a);
  }
  f = canonicalize(f);
  for (auto _ : state) {
    TestFunction out = inverse_fourier(fourier(f));
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(bm_fourier_roundtrip);

void bm_gauss_oracle(benchmark::State& state) {
  for (auto _ : state) {
    std::complex<double> v = quadratic_line_integral(3, q_of(2, 9), q_of(1, 3));
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_gauss_oracle);

void bm_iwasawa_sp4(benchmark::State& state) {
  long p = 3;
  QMat g = sp4_torus(p, 2, -1) * sp4_nu_self_dual(q_of(5, 9)) *
           sp4_nsrt_self_dual(q_of(1, 3), Q(2), q_of(-4, 9));
  for (auto _ : state) {
    IwasawaSp4 d = iwasawa_sp4(g, p, IwasawaVariant::self_dual);
    benchmark::DoNotOptimize(d.k);
  }
}
BENCHMARK(bm_iwasawa_sp4);

void bm_weyl_apply(benchmark::State& state) {
  TestFunction f = TestFunction::indicator(3, 2);
  f.atoms[0].modulation = {q_of(1, 3), Q(0)};
  f = canonicalize(f);
  TestFunction psi = TestFunction::indicator(3, 1);
  for (auto _ : state) {
    TestFunction out = weyl_apply(f, psi);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(bm_weyl_apply);

void bm_maslov_index(benchmark::State& state) {
  LagrangianLine a = LagrangianLine::param(q_of(1, 3));
  LagrangianLine b = LagrangianLine::param(Q(2));
  LagrangianLine c = LagrangianLine::infinity();
  for (auto _ : state) {
    ComplexVal v = maslov_index(a, b, c, 3);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_maslov_index);

}  // namespace

BENCHMARK_MAIN();
