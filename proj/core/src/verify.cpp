#include "padiq/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "padiq/characters.hpp"
#include "padiq/jsonio.hpp"
#include "padiq/lagrangian.hpp"
#include "padiq/lattice.hpp"
#include "padiq/maslov.hpp"
#include "padiq/oracle.hpp"
#include "padiq/quadform.hpp"
#include "padiq/symplectic.hpp"
#include "padiq/testfunction.hpp"
#include "padiq/weyl.hpp"

namespace padiq {

namespace {

using Rng = std::mt19937_64;

constexpr std::size_t kMaxStoredFailures = 32;

long pick(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

Q pow_q(long p, long e) {
  Q q = q_of(p);
  Q out(1);
  for (long i = 0; i < (e >= 0 ? e : -e); ++i) out *= q;
  return e >= 0 ? out : Q(1) / out;
}

// Nonzero rational with both numerator and denominator coprime to p.
Q rand_unit(Rng& rng, long p) {
  long num = pick(rng, 1, 40);
  while (num % p == 0) ++num;
  long den = pick(rng, 1, 40);
  while (den % p == 0) ++den;
  if (pick(rng, 0, 1)) num = -num;
  return q_of(num, den);
}

// p^v * unit with v uniform in [vlo, vhi].
Q rand_q(Rng& rng, long p, long vlo, long vhi) {
  return rand_unit(rng, p) * pow_q(p, pick(rng, vlo, vhi));
}

// Small nonzero rational with no prime constraint.
Q rand_rational(Rng& rng) {
  long num = pick(rng, -60, 60);
  if (num == 0) num = 7;
  return q_of(num, pick(rng, 1, 60));
}

std::string fmt(const Q& q) { return format_rational(q); }

void fail(Report& rep, std::string input, std::string expected, std::string got) {
  if (rep.failures.size() < kMaxStoredFailures)
    rep.failures.push_back({std::move(input), std::move(expected), std::move(got)});
  else if (rep.failures.size() == kMaxStoredFailures)
    rep.failures.push_back({"(further failures suppressed)", "", ""});
}

void track(Report& rep, double err) { rep.max_abs_error = std::max(rep.max_abs_error, err); }

std::vector<long> primes_for(const VerifyOptions& opt, std::vector<long> defaults) {
  if (opt.p != 0) return {opt.p};
  return defaults;
}

long cases_for(const VerifyOptions& opt, long defaults) {
  return opt.cases > 0 ? opt.cases : defaults;
}

int depth_for(const VerifyOptions& opt, int fallback) {
  if (opt.depth > 0) return opt.depth;
  if (const char* env = std::getenv("PADIQ_DEPTH")) {
    int d = std::atoi(env);
    if (d > 0) return d;
  }
  return fallback;
}

Rng stream(const VerifyOptions& opt, long p, unsigned salt) {
  return Rng(opt.seed * 0x9e3779b97f4a7c15ULL + static_cast<unsigned long long>(p) * 1000003ULL +
             salt);
}

// ---------------------------------------------------------------- suites

Report hilbert_suite(const VerifyOptions& opt) {
  Report rep{"hilbert-identities"};
  for (long p : std::vector<long>{2, 3, 5, 7, 11, 13}) {
    ++rep.cases;
    int v = hilbert_symbol(Q(4), Q(-3), p);
    if (v != 1) fail(rep, "(4,-3) at p=" + std::to_string(p), "1", std::to_string(v));
  }
  long cases = cases_for(opt, 1000);
  for (long p : primes_for(opt, {2, 3, 5, 7, 11, 13})) {
    Rng rng = stream(opt, p, 1);
    for (long i = 0; i < cases; ++i) {
      ++rep.cases;
      Q a = rand_q(rng, p, -3, 3);
      Q b = rand_q(rng, p, -3, 3);
      Q c = rand_q(rng, p, -3, 3);
      std::string where = "p=" + std::to_string(p) + " a=" + fmt(a) + " b=" + fmt(b);
      int ab = hilbert_symbol(a, b, p);
      if (ab != hilbert_symbol(b, a, p))
        fail(rep, "symmetry " + where, std::to_string(ab), std::to_string(hilbert_symbol(b, a, p)));
      int acb = hilbert_symbol(a * c, b, p);
      if (acb != ab * hilbert_symbol(c, b, p))
        fail(rep, "bilinearity " + where + " c=" + fmt(c), std::to_string(acb),
             std::to_string(ab * hilbert_symbol(c, b, p)));
      if (hilbert_symbol(a, -a, p) != 1)
        fail(rep, "(a,-a) " + where, "1", std::to_string(hilbert_symbol(a, -a, p)));
      Q sq = c * c;
      if (hilbert_symbol(a * sq, b, p) != ab)
        fail(rep, "square-class " + where, std::to_string(ab),
             std::to_string(hilbert_symbol(a * sq, b, p)));
    }
  }
  // reciprocity over all places is prime-independent
  Rng rng = stream(opt, 1, 2);
  for (long i = 0; i < cases; ++i) {
    ++rep.cases;
    Q a = rand_rational(rng);
    Q b = rand_rational(rng);
    int prod = hilbert_product(a, b);
    if (prod != 1)
      fail(rep, "reciprocity a=" + fmt(a) + " b=" + fmt(b), "1", std::to_string(prod));
  }
  return rep;
}

Report gauss_suite(const VerifyOptions& opt) {
  Report rep{"gauss-vs-oracle"};
  long cases = cases_for(opt, 200);
  for (long p : primes_for(opt, {2, 3, 5, 7})) {
    Rng rng = stream(opt, p, 3);
    for (long i = 0; i < cases; ++i) {
      ++rep.cases;
      Q a = rand_q(rng, p, -4, 4);
      Q b = pick(rng, 0, 7) == 0 ? Q(0) : rand_q(rng, p, -4, 4);
      std::complex<double> closed = gauss_integral(a, b, p).c();
      std::complex<double> oracle = quadratic_line_integral(p, a, b);
      double err = std::abs(closed - oracle);
      track(rep, err);
      if (err >= 1e-9) {
        std::ostringstream got;
        got << "closed=(" << closed.real() << "," << closed.imag() << ") oracle=(" << oracle.real()
            << "," << oracle.imag() << ")";
        fail(rep, "p=" + std::to_string(p) + " a=" + fmt(a) + " b=" + fmt(b), "|delta| < 1e-9",
             got.str());
      }
    }
  }
  return rep;
}

Report lambda_suite(const VerifyOptions& opt) {
  Report rep{"lambda-consistency"};
  int k = depth_for(opt, 6);
  for (long p : primes_for(opt, {2, 3, 5, 7})) {
    double target = p == 2 ? std::sqrt(2.0) : 1.0;
    Rng rng = stream(opt, p, 4);
    for (long i = 0; i < 40; ++i) {
      ++rep.cases;
      Q a = rand_q(rng, p, -4, 4);
      double mod = std::abs(lambda_factor(a, p).c());
      double err = std::abs(mod - target);
      track(rep, err);
      if (err >= 1e-12)
        fail(rep, "|lambda(" + fmt(a) + ")| p=" + std::to_string(p), std::to_string(target),
             std::to_string(mod));
    }

    // every case row against the depth-k residue sum of the defining
    // integral, restricted to the largest non-cancelling shell
    std::vector<long> units =
        p == 2 ? std::vector<long>{1, 3, 5, 7} : std::vector<long>{1, least_nonresidue(p)};
    Z pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    for (long kv = -2; kv <= 3; ++kv) {
      for (long u : units) {
        ++rep.cases;
        Q a = q_of(u) * pow_q(p, -kv);
        // shells |x| = p^nu cancel once v(a) - 2 nu drops below the
        // oscillation threshold; everything beyond nu_max integrates to 0
        long thresh = p == 2 ? -3 : -2;
        long va = -kv;
        long nu_max = -((thresh + 1 - va) / 2);
        while (va - 2 * nu_max <= thresh) --nu_max;
        while (va - 2 * (nu_max + 1) > thresh) ++nu_max;
        Q b = a * pow_q(p, -2 * nu_max);
        std::complex<double> sum{0.0, 0.0};
        for (Z x = 0; x < pk; ++x) {
          Q xq(x);
          sum += Phase(frac_part(b * xq * xq, p)).value();
        }
        double volume = pow_q(p, nu_max - k).get_d();
        std::complex<double> direct = sum * volume;
        std::complex<double> closed =
            lambda_factor(a, p).c() * std::pow(static_cast<double>(p), static_cast<double>(va) / 2.0);
        double err = std::abs(direct - closed);
        track(rep, err);
        if (err >= 1e-9)
          fail(rep, "lambda row a=" + fmt(a) + " p=" + std::to_string(p),
               "residue sum k=" + std::to_string(k) + " matches", "delta=" + std::to_string(err));
      }
    }
  }
  return rep;
}

LagrangianLine rand_line(Rng& rng, bool allow_star = true) {
  if (allow_star && pick(rng, 0, 5) == 0) return LagrangianLine::infinity();
  return LagrangianLine::param(rand_rational(rng));
}

std::array<LagrangianLine, 3> rand_distinct_triple(Rng& rng, bool allow_star = true) {
  while (true) {
    std::array<LagrangianLine, 3> t = {rand_line(rng, allow_star), rand_line(rng, allow_star),
                                       rand_line(rng, allow_star)};
    if (!(t[0] == t[1]) && !(t[1] == t[2]) && !(t[0] == t[2])) return t;
  }
}

std::string line_str(const LagrangianLine& l) { return l.star ? "*" : fmt(l.a); }

Report mu_perm_suite(const VerifyOptions& opt) {
  Report rep{"mu-permutations"};
  long cases = cases_for(opt, 100);
  const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (long p : primes_for(opt, {2, 3, 5, 7})) {
    Rng rng = stream(opt, p, 5);
    for (long i = 0; i < cases; ++i) {
      auto t = rand_distinct_triple(rng);
      LagrangianSubspace l1 = line_subspace(t[0]);
      LagrangianSubspace l2 = line_subspace(t[1]);
      LagrangianSubspace l3 = line_subspace(t[2]);
      std::array<const LagrangianSubspace*, 3> ls = {&l1, &l2, &l3};
      for (const auto& perm : perms) {
        ++rep.cases;
        int predicted = mu_permuted_predict(l1, l2, l3, perm, p);
        int direct = mu(*ls[perm[0]], *ls[perm[1]], *ls[perm[2]], p);
        if (predicted != direct)
          fail(rep,
               "p=" + std::to_string(p) + " lines=(" + line_str(t[0]) + "," + line_str(t[1]) +
                   "," + line_str(t[2]) + ") perm=" + std::to_string(perm[0]) +
                   std::to_string(perm[1]) + std::to_string(perm[2]),
               std::to_string(predicted), std::to_string(direct));
      }
    }
  }
  return rep;
}

Report mu_arith_suite(const VerifyOptions& opt) {
  Report rep{"mu-arithmetic-quadruples"};
  long cases = cases_for(opt, 100);
  for (long p : primes_for(opt, {2, 3, 5, 7})) {
    Rng rng = stream(opt, p, 6);
    for (long i = 0; i < cases; ++i) {
      ++rep.cases;
      Q a0 = rand_rational(rng);
      Q d = rand_rational(rng);
      std::vector<LagrangianSubspace> lines;
      for (int j = 0; j < 4; ++j) lines.push_back(line_subspace(LagrangianLine::param(a0 + j * d)));
      int v = mu_sequence(lines, p);
      if (v != 1)
        fail(rep, "p=" + std::to_string(p) + " a0=" + fmt(a0) + " d=" + fmt(d), "1",
             std::to_string(v));
    }
  }
  return rep;
}

Report mu_isotropic_suite(const VerifyOptions& opt) {
  Report rep{"mu-isotropic-quadruples"};
  long wanted = cases_for(opt, 50);
  for (long p : primes_for(opt, {2, 3, 5, 7})) {
    Rng rng = stream(opt, p, 7);
    long qualifying = 0;
    long attempts = 0;
    while (qualifying < wanted && attempts < wanted * 400) {
      ++attempts;
      std::array<LagrangianLine, 4> t = {rand_line(rng), rand_line(rng), rand_line(rng),
                                         rand_line(rng)};
      bool distinct = true;
      for (int i = 0; i < 4 && distinct; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (t[i] == t[j]) {
            distinct = false;
            break;
          }
      if (!distinct) continue;
      std::vector<LagrangianSubspace> ls;
      for (const auto& line : t) ls.push_back(line_subspace(line));
      bool all_isotropic = true;
      for (int skip = 0; skip < 4 && all_isotropic; ++skip) {
        std::vector<const LagrangianSubspace*> tri;
        for (int j = 0; j < 4; ++j)
          if (j != skip) tri.push_back(&ls[j]);
        all_isotropic = is_isotropic(diagonalize(triple_form(*tri[0], *tri[1], *tri[2])), p);
      }
      if (!all_isotropic) continue;
      ++qualifying;
      ++rep.cases;
      int v = mu_sequence(ls, p);
      if (v != 1)
        fail(rep,
             "p=" + std::to_string(p) + " lines=(" + line_str(t[0]) + "," + line_str(t[1]) + "," +
                 line_str(t[2]) + "," + line_str(t[3]) + ")",
             "1", std::to_string(v));
    }
    if (qualifying < wanted)
      fail(rep, "p=" + std::to_string(p), std::to_string(wanted) + " qualifying quadruples",
           std::to_string(qualifying));
  }
  return rep;
}

// ------------------------------------------------- decomposition helpers

QMat rand_sl2(Rng& rng, long p) {
  QMat m(2, 2, {Q(1), rand_q(rng, p, -2, 2), Q(0), Q(1)});
  QMat low(2, 2, {Q(1), Q(0), rand_q(rng, p, -2, 2), Q(1)});
  Q t = rand_q(rng, p, -2, 2);
  QMat torus(2, 2, {t, Q(0), Q(0), Q(1) / t});
  QMat g = m * low * torus;
  if (pick(rng, 0, 1)) g = g * QMat(2, 2, {Q(0), Q(-1), Q(1), Q(0)});
  return g;
}

QMat embed_blocks(const QMat& a, const QMat& b, const QMat& c, const QMat& d) {
  QMat m(4, 4);
  m.set_block(0, 0, a);
  m.set_block(0, 2, b);
  m.set_block(2, 0, c);
  m.set_block(2, 2, d);
  return m;
}

QMat rand_gl2(Rng& rng, std::function<Q()> entry) {
  while (true) {
    QMat a(2, 2, {entry(), entry(), entry(), entry()});
    if (a.det() != 0) return a;
  }
}

QMat rand_sym2(std::function<Q()> entry) {
  Q x = entry(), y = entry(), z = entry();
  return QMat(2, 2, {x, y, y, z});
}

// Random element of Sp(4, Q) as a product of standard generators.
QMat rand_sp4(Rng& rng, long p, long vlo = -2, long vhi = 2) {
  auto entry = [&]() { return pick(rng, 0, 3) == 0 ? Q(0) : rand_q(rng, p, vlo, vhi); };
  QMat g = QMat::identity(4);
  int factors = static_cast<int>(pick(rng, 3, 6));
  for (int i = 0; i < factors; ++i) {
    switch (pick(rng, 0, 3)) {
      case 0:
        g = g * embed_blocks(QMat::identity(2), rand_sym2(entry), QMat(2, 2), QMat::identity(2));
        break;
      case 1:
        g = g * embed_blocks(QMat::identity(2), QMat(2, 2), rand_sym2(entry), QMat::identity(2));
        break;
      case 2: {
        QMat a = rand_gl2(rng, entry);
        g = g * embed_blocks(a, QMat(2, 2), QMat(2, 2), a.inverse().transpose());
        break;
      }
      default:
        g = g * QMat::J0(2);
    }
  }
  return g;
}

// Random element of Sp(4, Z_p): same generators with integral data.
QMat rand_sp4_zp(Rng& rng, long p) {
  auto entry = [&]() { return q_of(pick(rng, -6, 6)); };
  auto unit = [&]() {
    long u = pick(rng, 1, 6);
    while (u % p == 0) ++u;
    return pick(rng, 0, 1) ? q_of(u) : q_of(-u);
  };
  QMat g = QMat::identity(4);
  int factors = static_cast<int>(pick(rng, 3, 6));
  for (int i = 0; i < factors; ++i) {
    switch (pick(rng, 0, 3)) {
      case 0:
        g = g * embed_blocks(QMat::identity(2), rand_sym2(entry), QMat(2, 2), QMat::identity(2));
        break;
      case 1:
        g = g * embed_blocks(QMat::identity(2), QMat(2, 2), rand_sym2(entry), QMat::identity(2));
        break;
      case 2: {
        QMat a(2, 2, {unit(), Q(0), entry(), unit()});
        if (pick(rng, 0, 1)) a = a.transpose();
        g = g * embed_blocks(a, QMat(2, 2), QMat(2, 2), a.inverse().transpose());
        break;
      }
      default:
        g = g * QMat::J0(2);
    }
  }
  return g;
}

// Random integral matrix preserving the rescaled form J1 = T^T J0 T,
// T = diag(1, 1, 1/p, 1); conjugating by T lands in the L1 stabilizer.
QMat rand_GL1_compact(Rng& rng, long p) {
  QMat T = QMat::identity(4);
  T.at(2, 2) = Q(1, p);
  QMat Tinv = QMat::identity(4);
  Tinv.at(2, 2) = q_of(p);

  auto zint = [&]() { return q_of(pick(rng, -6, 6)); };
  auto unit = [&]() {
    long u = pick(rng, 1, 6);
    while (u % p == 0) ++u;
    return pick(rng, 0, 1) ? q_of(u) : q_of(-u);
  };
  auto shaped_sym = [&]() {
    // S with D S symmetric for D = diag(1/p, 1): S = [[x, p y], [y, z]]
    Q x = zint(), y = zint(), z = zint();
    return QMat(2, 2, {x, p * y, y, z});
  };
  QMat h = QMat::identity(4);
  int factors = static_cast<int>(pick(rng, 3, 6));
  for (int i = 0; i < factors; ++i) {
    switch (pick(rng, 0, 2)) {
      case 0:
        h = h * embed_blocks(QMat::identity(2), shaped_sym(), QMat(2, 2), QMat::identity(2));
        break;
      case 1:
        h = h * embed_blocks(QMat::identity(2), QMat(2, 2), shaped_sym(), QMat::identity(2));
        break;
      default: {
        QMat a = pick(rng, 0, 1) ? QMat(2, 2, {unit(), Q(0), zint(), unit()})
                                 : QMat(2, 2, {unit(), p * zint(), Q(0), unit()});
        // companion block keeping the rescaled pairing
        QMat D(2, 2, {Q(1, p), Q(0), Q(0), Q(1)});
        QMat Dinv(2, 2, {q_of(p), Q(0), Q(0), Q(1)});
        QMat comp = Dinv * a.inverse().transpose() * D;
        h = h * embed_blocks(a, QMat(2, 2), QMat(2, 2), comp);
        break;
      }
    }
  }
  return T * h * Tinv;
}

Report decomposition_suite(const VerifyOptions& opt) {
  Report rep{"decompositions"};
  long cases = cases_for(opt, 100);
  for (long p : primes_for(opt, {2, 3, 5})) {
    Rng rng = stream(opt, p, 8);

    for (long i = 0; i < cases; ++i) {
      ++rep.cases;
      QMat g = rand_sl2(rng, p);
      try {
        IwasawaSL2 d = iwasawa_sl2(g, p);
        QMat torus(2, 2, {pow_q(p, d.a), Q(0), Q(0), pow_q(p, -d.a)});
        QMat nu(2, 2, {Q(1), d.u, Q(0), Q(1)});
        bool ok = torus * nu * d.h == g && in_sp_zp(d.h, p);
        if (!ok) fail(rep, "iwasawa_sl2 p=" + std::to_string(p) + " case " + std::to_string(i),
                      "exact round trip", "mismatch");
      } catch (const std::exception& e) {
        fail(rep, "iwasawa_sl2 p=" + std::to_string(p) + " case " + std::to_string(i), "success",
             e.what());
      }
    }

    for (long i = 0; i < cases; ++i) {
      ++rep.cases;
      QMat g = pick(rng, 0, 1) == 0
                   ? rand_sp4(rng, p)
                   : sp4_torus(p, pick(rng, -2, 2), pick(rng, -2, 2)) *
                         sp4_nu_self_dual(rand_q(rng, p, -2, 2)) *
                         sp4_nsrt_self_dual(rand_q(rng, p, -2, 2), rand_q(rng, p, -2, 2),
                                            rand_q(rng, p, -2, 2)) *
                         rand_sp4_zp(rng, p);
      try {
        IwasawaSp4 d = iwasawa_sp4(g, p, IwasawaVariant::self_dual);
        bool ok = d.torus * d.n1 * d.n2 * d.k == g && in_sp_zp(d.k, p);
        if (!ok) fail(rep, "iwasawa_sp4 sd p=" + std::to_string(p) + " case " + std::to_string(i),
                      "exact round trip", "mismatch");
      } catch (const std::exception& e) {
        fail(rep, "iwasawa_sp4 sd p=" + std::to_string(p) + " case " + std::to_string(i),
             "success", e.what());
      }
    }

    QMat tf = QMat::identity(4);
    tf.at(2, 2) = Q(1, p);
    QMat tfinv = QMat::identity(4);
    tfinv.at(2, 2) = q_of(p);
    for (long i = 0; i < cases; ++i) {
      ++rep.cases;
      // the L1-shaped unipotents live in the rescaled frame; bring them back
      QMat g = sp4_torus(p, pick(rng, -2, 2), pick(rng, -2, 2)) * tf *
               sp4_nu_L1(p, rand_q(rng, p, -2, 2)) *
               sp4_nsrt_L1(p, rand_q(rng, p, -2, 2), rand_q(rng, p, -2, 2),
                           rand_q(rng, p, -2, 2)) *
               tfinv * rand_GL1_compact(rng, p);
      try {
        IwasawaSp4 d = iwasawa_sp4(g, p, IwasawaVariant::L1);
        bool ok = d.torus * d.n1 * d.n2 * d.k == g && in_G_L1_2(d.k, p);
        if (!ok) fail(rep, "iwasawa_sp4 L1 p=" + std::to_string(p) + " case " + std::to_string(i),
                      "exact round trip", "mismatch");
      } catch (const std::exception& e) {
        fail(rep, "iwasawa_sp4 L1 p=" + std::to_string(p) + " case " + std::to_string(i),
             "success", e.what());
      }
    }

    for (long i = 0; i < cases; ++i) {
      ++rep.cases;
      // integral with a unit in the first column
      auto zi = [&]() { return q_of(pick(rng, -9, 9)); };
      long u = pick(rng, 1, 9);
      while (u % p == 0) ++u;
      QMat theta = pick(rng, 0, 1) ? QMat(2, 2, {q_of(u), zi(), zi(), zi()})
                                   : QMat(2, 2, {zi(), zi(), q_of(u), zi()});
      if (theta.det() == 0) {
        theta.at(0, 1) += 1;
        if (theta.det() == 0) theta.at(0, 1) += 1;
      }
      try {
        GL2UnitDecomp d = gl2_unit_decompose(theta, p);
        bool ok = d.a * d.mid * d.b == theta && in_sp_zp(d.a, p) && in_sp_zp(d.b, p) &&
                  d.a.det() == 1 && d.b.det() == 1 && d.mid.at(0, 1) == 0 && d.mid.at(1, 0) == 0;
        if (!ok) fail(rep, "gl2_unit p=" + std::to_string(p) + " case " + std::to_string(i),
                      "exact round trip", "mismatch");
      } catch (const std::exception& e) {
        fail(rep, "gl2_unit p=" + std::to_string(p) + " case " + std::to_string(i), "success",
             e.what());
      }
    }

    for (long i = 0; i < cases; ++i) {
      ++rep.cases;
      // random member of the parabolic stabilizing Span(e1), n = 2, k = 1
      auto entry = [&]() { return pick(rng, 0, 2) == 0 ? Q(0) : rand_rational(rng); };
      QMat x = QMat::identity(4);
      int factors = static_cast<int>(pick(rng, 3, 6));
      for (int fidx = 0; fidx < factors; ++fidx) {
        QMat piece = QMat::identity(4);
        switch (pick(rng, 0, 4)) {
          case 0: {  // GL(1) Levi part
            Q gval = rand_rational(rng);
            piece.at(0, 0) = gval;
            piece.at(2, 2) = Q(1) / gval;
            break;
          }
          case 1: {  // Sp(2) Levi part
            QMat s = rand_sl2(rng, p);
            piece.at(1, 1) = s.at(0, 0);
            piece.at(1, 3) = s.at(0, 1);
            piece.at(3, 1) = s.at(1, 0);
            piece.at(3, 3) = s.at(1, 1);
            break;
          }
          case 2:  // symmetric unipotent within the k-block
            piece.at(0, 2) = entry();
            break;
          case 3: {  // off-diagonal symmetric unipotent
            Q fval = entry();
            piece.at(0, 3) = fval;
            piece.at(1, 2) = fval;
            break;
          }
          default: {  // GL(n) unipotent
            Q eval = entry();
            piece.at(0, 1) = eval;
            piece.at(3, 2) = -eval;
            break;
          }
        }
        x = x * piece;
      }
      ParabolicResult res = parabolic_factorize(x, 1);
      bool ok = res.in_subgroup && res.factors &&
                res.factors->xi1 * res.factors->xi2 * res.factors->xi3 * res.factors->xi4 == x;
      if (!ok) fail(rep, "parabolic p=" + std::to_string(p) + " case " + std::to_string(i),
                    "exact factorization", res.in_subgroup ? "bad product" : res.violating_block);
      // an element moving e1 out of the subspace must be rejected
      if (i == 0) {
        QMat bad = QMat::J0(2);
        ParabolicResult rbad = parabolic_factorize(bad, 1);
        if (rbad.in_subgroup)
          fail(rep, "parabolic rejection p=" + std::to_string(p), "outside subgroup", "accepted");
      }
    }
  }
  return rep;
}

Report lattice_suite(const VerifyOptions& opt) {
  Report rep{"lattice-invariants"};
  long cases = cases_for(opt, 100);
  for (long p : primes_for(opt, {2, 3, 5})) {
    Rng rng = stream(opt, p, 9);

    {
      ++rep.cases;
      QMat l1 = QMat::identity(4);
      l1.at(2, 2) = Q(1, p);
      std::vector<long> d1 = symplectic_divisors(l1, p);
      if (d1 != std::vector<long>{1, 0})
        fail(rep, "divisors(L1) p=" + std::to_string(p), "(1,0)",
             "(" + std::to_string(d1[0]) + "," + std::to_string(d1[1]) + ")");
      ++rep.cases;
      QMat l2 = QMat::identity(4);
      l2.at(2, 2) = Q(1, p);
      l2.at(3, 3) = Q(1, p);
      std::vector<long> d2 = symplectic_divisors(l2, p);
      if (d2 != std::vector<long>{1, 1})
        fail(rep, "divisors(L2) p=" + std::to_string(p), "(1,1)",
             "(" + std::to_string(d2[0]) + "," + std::to_string(d2[1]) + ")");
    }

    for (long i = 0; i < cases; ++i) {
      ++rep.cases;
      QMat basis = rand_sp4(rng, p);
      // scale some columns to leave the self-dual orbit
      for (std::size_t c = 0; c < 4; ++c)
        if (pick(rng, 0, 2) == 0) {
          Q s = pow_q(p, pick(rng, -2, 2));
          for (std::size_t r = 0; r < 4; ++r) basis.at(r, c) *= s;
        }

      QMat ddual = dual_lattice(dual_lattice(basis));
      if (!lattice_equal(ddual, basis, p))
        fail(rep, "dual involution p=" + std::to_string(p) + " case " + std::to_string(i),
             "same lattice", "different");

      bool sd = is_self_dual(basis, p);
      long level = lattice_level(basis, p);
      std::vector<long> div = symplectic_divisors(basis, p);
      bool div_zero = std::all_of(div.begin(), div.end(), [](long d) { return d == 0; });
      if (sd != (level == 0) || sd != div_zero)
        fail(rep, "self-dual equivalences p=" + std::to_string(p) + " case " + std::to_string(i),
             "agreeing predicates",
             "sd=" + std::to_string(sd) + " level=" + std::to_string(level) +
                 " divzero=" + std::to_string(div_zero));

      // invariance under an integral unimodular basis change
      QMat u = QMat::identity(4);
      for (int step = 0; step < 6; ++step) {
        long a = pick(rng, 0, 3), b = pick(rng, 0, 3);
        if (a == b) continue;
        Q c = q_of(pick(rng, -4, 4));
        for (std::size_t r = 0; r < 4; ++r) u.at(r, a) += c * u.at(r, b);
      }
      QMat changed = basis * u;
      if (symplectic_divisors(changed, p) != div || lattice_level(changed, p) != level ||
          is_self_dual(changed, p) != sd || !lattice_equal(changed, basis, p))
        fail(rep, "basis-change invariance p=" + std::to_string(p) + " case " + std::to_string(i),
             "invariant", "changed");
    }
  }
  return rep;
}

Atom rand_atom(Rng& rng, long p, std::size_t n, long vrange = 2) {
  Atom a;
  a.coeff = PhaseSum::of(Phase(Q(pick(rng, 0, 7), 8)), q_of(pick(rng, 1, 5), pick(rng, 1, 3)));
  for (std::size_t i = 0; i < n; ++i) {
    a.center.push_back(pick(rng, 0, 2) == 0 ? Q(0) : rand_q(rng, p, -vrange, vrange));
    a.scale.push_back(pick(rng, -vrange, vrange));
    a.modulation.push_back(pick(rng, 0, 2) == 0 ? Q(0) : rand_q(rng, p, -vrange, vrange));
  }
  return a;
}

TestFunction rand_tf(Rng& rng, long p, std::size_t n, int max_atoms = 2, long vrange = 2) {
  TestFunction f{p, n, {}};
  int count = static_cast<int>(pick(rng, 1, max_atoms));
  for (int i = 0; i < count; ++i) f.atoms.push_back(rand_atom(rng, p, n, vrange));
  return canonicalize(f);
}

Report weyl_relation_suite(const VerifyOptions& opt) {
  Report rep{"weyl-relation"};
  long cases = cases_for(opt, 100);
  for (long p : primes_for(opt, {2, 3, 5})) {
    Rng rng = stream(opt, p, 10);
    for (long i = 0; i < cases; ++i) {
      ++rep.cases;
      TestFunction psi = rand_tf(rng, p, 1);
      auto rand_vec = [&]() {
        std::vector<Q> z;
        for (int j = 0; j < 2; ++j)
          z.push_back(pick(rng, 0, 3) == 0 ? Q(0) : rand_q(rng, p, -2, 2));
        return z;
      };
      HeisenbergElt g1{rand_vec(), Phase(Q(pick(rng, 0, 3), 4))};
      HeisenbergElt g2{rand_vec(), Phase(Q(pick(rng, 0, 3), 4))};
      TestFunction lhs = schrodinger_apply(g1, schrodinger_apply(g2, psi));
      TestFunction rhs = schrodinger_apply(h_mul(g1, g2, p), psi);
      if (!tf_equal(lhs, rhs))
        fail(rep, "p=" + std::to_string(p) + " case " + std::to_string(i), "exact atom equality",
             "functions differ");
    }
  }
  return rep;
}

Report weyl_kernel_suite(const VerifyOptions& opt) {
  Report rep{"weyl-kernel-vs-apply"};
  long instances = cases_for(opt, 50);
  for (long p : primes_for(opt, {2, 3, 5})) {
    Rng rng = stream(opt, p, 11);
    PrimeCtx ctx(p, 8);
    long v2 = p == 2 ? 1 : 0;
    for (long inst = 0; inst < instances; ++inst) {
      TestFunction f = rand_tf(rng, p, 2, 1, 1);
      TestFunction psi = rand_tf(rng, p, 1, 1, 1);
      TestFunction applied = weyl_apply(f, psi);
      for (int pt = 0; pt < 20; ++pt) {
        ++rep.cases;
        Q xi = pick(rng, 0, 4) == 0 ? Q(0) : rand_q(rng, p, -2, 2);
        std::complex<double> direct = tf_eval(applied, {xi}).c();

        std::complex<double> integrated{0.0, 0.0};
        for (const Atom& pa : psi.atoms) {
          long teta = pa.scale[0];
          for (const Atom& fa : f.atoms) {
            teta = std::max(teta, fa.scale[0] + v2);
            teta = std::max(teta, -fa.scale[1]);
            Q lin = fa.modulation[0] / 2 + fa.center[1] + pa.modulation[0];
            if (lin != 0) teta = std::max(teta, -valuation_nonzero(lin, p));
          }
          int depth = static_cast<int>(std::max(teta - pa.scale[0], 0L));
          BallDomain dom{{pa.center[0]}, {static_cast<int>(pa.scale[0])}};
          std::complex<double> coeff = pa.coeff.value();
          integrated += ball_sum(ctx, dom, depth, [&](const std::vector<Q>& eta) {
            return weyl_kernel(f, xi, eta[0]).c() * coeff *
                   Phase(frac_part(pa.modulation[0] * eta[0], p)).value();
          });
        }
        double err = std::abs(direct - integrated);
        track(rep, err);
        if (err >= 1e-9)
          fail(rep,
               "p=" + std::to_string(p) + " instance " + std::to_string(inst) + " xi=" + fmt(xi),
               "|delta| < 1e-9", "delta=" + std::to_string(err));
      }
    }
  }
  return rep;
}

Report weyl_compose_suite(const VerifyOptions& opt) {
  Report rep{"weyl-compose-constant"};
  long extra = cases_for(opt, 3) - 1;
  for (long p : primes_for(opt, {2, 3, 5})) {
    Rng rng = stream(opt, p, 12);
    double expected = p == 2 ? 0.25 : 1.0;
    for (long inst = 0; inst <= extra; ++inst) {
      ++rep.cases;
      TestFunction f = inst == 0 ? TestFunction::indicator(p, 2) : rand_tf(rng, p, 2, 1, 1);
      TestFunction g = inst == 0 ? TestFunction::indicator(p, 2) : rand_tf(rng, p, 2, 1, 1);
      KernelComposeReport kc = kernel_compose(f, g);
      if (kc.indeterminate) {
        if (inst == 0)
          fail(rep, "p=" + std::to_string(p) + " instance " + std::to_string(inst),
               "determinate constant", "kernel vanished at every sample");
        continue;
      }
      double err = std::abs(kc.fitted_c - std::complex<double>(expected, 0.0));
      track(rep, std::max(err, kc.max_abs_deviation));
      if (err >= 1e-6 || kc.max_abs_deviation >= 1e-6)
        fail(rep, "p=" + std::to_string(p) + " instance " + std::to_string(inst),
             "c=" + std::to_string(expected),
             "c=(" + std::to_string(kc.fitted_c.real()) + "," +
                 std::to_string(kc.fitted_c.imag()) +
                 ") dev=" + std::to_string(kc.max_abs_deviation));
    }
  }
  return rep;
}

Report maslov_closed_suite(const VerifyOptions& opt) {
  Report rep{"maslov-integral"};
  long cases = cases_for(opt, 100);
  for (long p : primes_for(opt, {2, 3, 5, 7})) {
    Rng rng = stream(opt, p, 13);
    for (long i = 0; i < cases; ++i) {
      ++rep.cases;
      auto t = rand_distinct_triple(rng);
      std::complex<double> closed = maslov_index(t[0], t[1], t[2], p).c();
      std::complex<double> integral = maslov_index_integral(t[0], t[1], t[2], p);
      double err = std::abs(closed - integral);
      double mod_err = std::abs(std::abs(closed) - 1.0);
      track(rep, err);
      std::string where = "p=" + std::to_string(p) + " lines=(" + line_str(t[0]) + "," +
                          line_str(t[1]) + "," + line_str(t[2]) + ")";
      if (err >= 1e-9) fail(rep, where, "closed form matches integral", "delta=" + std::to_string(err));
      if (mod_err >= 1e-12) fail(rep, where, "|alpha| = 1", "off by " + std::to_string(mod_err));
    }
  }
  return rep;
}

Report maslov_cocycle_suite(const VerifyOptions& opt) {
  Report rep{"maslov-cocycle"};
  long cases = cases_for(opt, 100);
  for (long p : primes_for(opt, {2, 3, 5, 7})) {
    Rng rng = stream(opt, p, 14);
    for (long i = 0; i < cases; ++i) {
      ++rep.cases;
      std::array<LagrangianLine, 4> lines;
      while (true) {
        for (auto& l : lines) l = rand_line(rng);
        bool distinct = true;
        for (int a = 0; a < 4 && distinct; ++a)
          for (int b = a + 1; b < 4; ++b)
            if (lines[a] == lines[b]) {
              distinct = false;
              break;
            }
        if (distinct) break;
      }
      if (!maslov_relations_check(lines, p))
        fail(rep,
             "p=" + std::to_string(p) + " lines=(" + line_str(lines[0]) + "," +
                 line_str(lines[1]) + "," + line_str(lines[2]) + "," + line_str(lines[3]) + ")",
             "relations hold", "violated");
    }
  }
  return rep;
}

Report constant_c_suite(const VerifyOptions& opt) {
  Report rep{"constant-c"};
  for (long p : primes_for(opt, {2, 3, 5, 7})) {
    ++rep.cases;
    double expected = p == 2 ? 0.5 : 1.0;
    std::complex<double> got = constant_c(p).c();
    double err = std::abs(got - std::complex<double>(expected, 0.0));
    track(rep, err);
    if (err != 0.0)
      fail(rep, "constant_c(" + std::to_string(p) + ")", std::to_string(expected),
           std::to_string(got.real()));
    // direct product of the table values
    Q quarter(1, 4);
    std::complex<double> direct = lambda_factor(quarter, p).c() *
                                  lambda_factor(-quarter, p).c() *
                                  padic_norm(Q(4), p).get_d();
    if (std::abs(direct - got) >= 1e-12)
      fail(rep, "lambda-table product p=" + std::to_string(p), std::to_string(got.real()),
           std::to_string(direct.real()));
  }
  return rep;
}

using SuiteFn = Report (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"hilbert-identities", hilbert_suite},
      {"gauss-vs-oracle", gauss_suite},
      {"lambda-consistency", lambda_suite},
      {"mu-permutations", mu_perm_suite},
      {"mu-arithmetic-quadruples", mu_arith_suite},
      {"mu-isotropic-quadruples", mu_isotropic_suite},
      {"decompositions", decomposition_suite},
      {"lattice-invariants", lattice_suite},
      {"weyl-relation", weyl_relation_suite},
      {"weyl-kernel-vs-apply", weyl_kernel_suite},
      {"weyl-compose-constant", weyl_compose_suite},
      {"maslov-integral", maslov_closed_suite},
      {"maslov-cocycle", maslov_cocycle_suite},
      {"constant-c", constant_c_suite},
  };
  return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

Report run_suite(const std::string& suite, const VerifyOptions& opt) {
  for (const auto& [name, fn] : registry())
    if (name == suite) {
      auto start = std::chrono::steady_clock::now();
      Report rep = fn(opt);
      rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      return rep;
    }
  throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace padiq
