#include "padiq/testfunction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "padiq/matrix.hpp"

namespace padiq {

namespace {

Q pow_q(long p, long e) {
  Q q = q_of(p);
  Q out(1);
  for (long i = 0; i < (e >= 0 ? e : -e); ++i) out *= q;
  return e >= 0 ? out : Q(1) / out;
}

void require_same_frame(const TestFunction& f, const TestFunction& g, const char* who) {
  if (f.p != g.p || f.n != g.n)
    throw std::invalid_argument(std::string(who) + ": prime or dimension mismatch");
}

void require_atom_shape(const Atom& a, std::size_t n, const char* who) {
  if (a.center.size() != n || a.scale.size() != n || a.modulation.size() != n)
    throw std::invalid_argument(std::string(who) + ": atom data length mismatch");
}

int cmp_vec(const std::vector<Q>& a, const std::vector<Q>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

int cmp_key(const Atom& x, const Atom& y) {
  int c = cmp_vec(x.center, y.center);
  if (c != 0) return c;
  if (x.scale != y.scale) return x.scale < y.scale ? -1 : 1;
  return cmp_vec(x.modulation, y.modulation);
}

bool in_ball(const Q& x, const Q& c, long s, long p) {
  Q d = x - c;
  if (d == 0) return true;
  return valuation_nonzero(d, p) >= s;
}

}  // namespace

HeisenbergElt h_identity(std::size_t n) { return {std::vector<Q>(2 * n, Q(0)), Phase()}; }

HeisenbergElt h_mul(const HeisenbergElt& g1, const HeisenbergElt& g2, long p) {
  if (g1.z.size() != g2.z.size() || g1.z.size() % 2 != 0)
    throw std::invalid_argument("h_mul: dimension mismatch");
  HeisenbergElt out;
  out.z.resize(g1.z.size());
  for (std::size_t i = 0; i < g1.z.size(); ++i) out.z[i] = g1.z[i] + g2.z[i];
  Q cocycle = symp_pair(g1.z, g2.z) / 2;
  out.phase = g1.phase * g2.phase * Phase(frac_part(cocycle, p));
  return out;
}

HeisenbergElt h_inverse(const HeisenbergElt& g) {
  HeisenbergElt out;
  out.z.reserve(g.z.size());
  for (const Q& c : g.z) out.z.push_back(-c);
  out.phase = g.phase.conj();
  return out;
}

TestFunction TestFunction::indicator(long p, std::size_t n) {
  Atom a;
  a.coeff = PhaseSum::one();
  a.center.assign(n, Q(0));
  a.scale.assign(n, 0);
  a.modulation.assign(n, Q(0));
  return {p, n, {std::move(a)}};
}

TestFunction TestFunction::single(long p, Atom a) {
  TestFunction f{p, a.center.size(), {std::move(a)}};
  return canonicalize(f);
}

Q reduce_mod_scale(const Q& x, long scale, long p) {
  if (x == 0) return x;
  return pow_q(p, scale) * frac_part(x * pow_q(p, -scale), p);
}

TestFunction canonicalize(const TestFunction& f) {
  TestFunction out{f.p, f.n, {}};
  out.atoms.reserve(f.atoms.size());
  for (const Atom& raw : f.atoms) {
    require_atom_shape(raw, f.n, "canonicalize");
    if (raw.coeff.is_zero()) continue;
    Atom a = raw;
    for (std::size_t i = 0; i < f.n; ++i) {
      Q bred = reduce_mod_scale(a.modulation[i], -a.scale[i], f.p);
      Q dropped = a.modulation[i] - bred;
      if (dropped != 0)
        a.coeff = a.coeff.times(Phase(frac_part(dropped * a.center[i], f.p)));
      a.modulation[i] = bred;
      a.center[i] = reduce_mod_scale(a.center[i], a.scale[i], f.p);
    }
    out.atoms.push_back(std::move(a));
  }
  std::sort(out.atoms.begin(), out.atoms.end(),
            [](const Atom& x, const Atom& y) { return cmp_key(x, y) < 0; });
  std::vector<Atom> merged;
  for (Atom& a : out.atoms) {
    if (!merged.empty() && cmp_key(merged.back(), a) == 0)
      merged.back().coeff += a.coeff;
    else
      merged.push_back(std::move(a));
  }
  std::erase_if(merged, [](const Atom& a) { return a.coeff.is_zero(); });
  out.atoms = std::move(merged);
  return out;
}

TestFunction tf_add(const TestFunction& f, const TestFunction& g) {
  require_same_frame(f, g, "tf_add");
  TestFunction out = f;
  out.atoms.insert(out.atoms.end(), g.atoms.begin(), g.atoms.end());
  return canonicalize(out);
}

TestFunction tf_scale(const TestFunction& f, const PhaseSum& c) {
  TestFunction out = f;
  for (Atom& a : out.atoms) a.coeff = a.coeff * c;
  return canonicalize(out);
}

PhaseSum tf_eval_sum(const TestFunction& f, const std::vector<Q>& point) {
  if (point.size() != f.n) throw std::invalid_argument("tf_eval: point dimension mismatch");
  PhaseSum total;
  for (const Atom& a : f.atoms) {
    bool inside = true;
    for (std::size_t i = 0; i < f.n && inside; ++i)
      inside = in_ball(point[i], a.center[i], a.scale[i], f.p);
    if (!inside) continue;
    Q e(0);
    for (std::size_t i = 0; i < f.n; ++i) e += a.modulation[i] * point[i];
    total += a.coeff.times(Phase(frac_part(e, f.p)));
  }
  return total;
}

ComplexVal tf_eval(const TestFunction& f, const std::vector<Q>& point) {
  return to_complexval(tf_eval_sum(f, point));
}

BallIsect ball_intersect(const Q& c1, long s1, const Q& c2, long s2, long p) {
  BallIsect out;
  if (!in_ball(c1, c2, std::min(s1, s2), p)) return out;
  out.nonempty = true;
  if (s1 >= s2) {
    out.center = c1;
    out.scale = s1;
  } else {
    out.center = c2;
    out.scale = s2;
  }
  return out;
}

PhaseSum char_ball_integral(const Q& L, const Q& c, long s, long p) {
  if (L != 0 && valuation_nonzero(L, p) + s < 0) return PhaseSum::zero();
  Phase ph = L == 0 ? Phase() : Phase(frac_part(L * c, p));
  return PhaseSum::of(ph, pow_q(p, -s));
}

PhaseSum tf_inner_sum(const TestFunction& f, const TestFunction& g) {
  require_same_frame(f, g, "tf_inner");
  TestFunction cf = canonicalize(f), cg = canonicalize(g);
  PhaseSum total;
  for (const Atom& a : cf.atoms)
    for (const Atom& b : cg.atoms) {
      PhaseSum term = a.coeff * b.coeff.conj();
      bool dead = false;
      for (std::size_t i = 0; i < f.n && !dead; ++i) {
        BallIsect isect =
            ball_intersect(a.center[i], a.scale[i], b.center[i], b.scale[i], f.p);
        if (!isect.nonempty) {
          dead = true;
          break;
        }
        PhaseSum factor = char_ball_integral(a.modulation[i] - b.modulation[i], isect.center,
                                             isect.scale, f.p);
        if (factor.empty()) {
          dead = true;
          break;
        }
        term = term * factor;
      }
      if (!dead) total += term;
    }
  return total;
}

ComplexVal tf_inner(const TestFunction& f, const TestFunction& g) {
  return to_complexval(tf_inner_sum(f, g));
}

namespace {

// Enumerates refined sub-centers of an atom at the common scale S.
// Returns false when the visitor stops early.
bool for_each_subcell(const Atom& a, const std::vector<long>& S, long p,
                      const std::function<bool(std::vector<Q>&)>& visit) {
  std::size_t n = a.center.size();
  std::vector<long> count(n), idx(n, 0);
  std::vector<Q> step(n);
  for (std::size_t i = 0; i < n; ++i) {
    long k = S[i] - a.scale[i];
    long c = 1;
    for (long j = 0; j < k; ++j) c *= p;
    count[i] = c;
    step[i] = pow_q(p, a.scale[i]);
  }
  std::vector<Q> pt = a.center;
  while (true) {
    if (!visit(pt)) return false;
    std::size_t i = 0;
    while (i < n) {
      ++idx[i];
      pt[i] += step[i];
      if (idx[i] < count[i]) break;
      pt[i] -= step[i] * count[i];
      idx[i] = 0;
      ++i;
    }
    if (i == n) return true;
  }
}

}  // namespace

bool tf_is_zero(const TestFunction& f, std::size_t max_cells) {
  TestFunction c = canonicalize(f);
  if (c.atoms.empty()) return true;
  if (c.atoms.size() == 1) return false;

  std::vector<long> S(c.n);
  for (std::size_t i = 0; i < c.n; ++i) {
    long m = c.atoms.front().scale[i];
    for (const Atom& a : c.atoms) m = std::max(m, a.scale[i]);
    S[i] = m;
  }
  double cells = 0;
  for (const Atom& a : c.atoms) {
    double one = 1;
    for (std::size_t i = 0; i < c.n; ++i)
      one *= std::pow(static_cast<double>(c.p), static_cast<double>(S[i] - a.scale[i]));
    cells += one;
  }

  if (cells <= static_cast<double>(max_cells)) {
    TestFunction refined{c.p, c.n, {}};
    for (const Atom& a : c.atoms)
      for_each_subcell(a, S, c.p, [&](std::vector<Q>& sub) {
        Atom piece;
        piece.coeff = a.coeff;
        piece.center = sub;
        piece.scale = S;
        piece.modulation = a.modulation;
        refined.atoms.push_back(std::move(piece));
        return true;
      });
    return canonicalize(refined).atoms.empty();
  }

  // Sampled fallback; the refinement grid is too large to materialize.
  std::size_t probes = 0;
  bool zero = true;
  for (const Atom& a : c.atoms) {
    if (!zero) break;
    for_each_subcell(a, S, c.p, [&](std::vector<Q>& sub) {
      if (std::abs(tf_eval(c, sub).c()) > 1e-12) zero = false;
      return zero && ++probes < 4096;
    });
  }
  return zero;
}

bool tf_equal(const TestFunction& f, const TestFunction& g, std::size_t max_cells) {
  require_same_frame(f, g, "tf_equal");
  TestFunction diff = f;
  for (const Atom& a : g.atoms) {
    Atom neg = a;
    neg.coeff = -neg.coeff;
    diff.atoms.push_back(std::move(neg));
  }
  return tf_is_zero(diff, max_cells);
}

TestFunction fourier(const TestFunction& f) {
  TestFunction out{f.p, f.n, {}};
  out.atoms.reserve(f.atoms.size());
  for (const Atom& a : f.atoms) {
    require_atom_shape(a, f.n, "fourier");
    Atom b;
    b.coeff = a.coeff;
    Q e(0);
    long msum = 0;
    for (std::size_t i = 0; i < f.n; ++i) {
      e += a.center[i] * a.modulation[i];
      msum += a.scale[i];
    }
    b.coeff = b.coeff.times(Phase(frac_part(e, f.p))).times(pow_q(f.p, -msum));
    b.center.reserve(f.n);
    b.scale.reserve(f.n);
    b.modulation.reserve(f.n);
    for (std::size_t i = 0; i < f.n; ++i) {
      b.center.push_back(-a.modulation[i]);
      b.scale.push_back(-a.scale[i]);
      b.modulation.push_back(a.center[i]);
    }
    out.atoms.push_back(std::move(b));
  }
  return canonicalize(out);
}

TestFunction inverse_fourier(const TestFunction& f) {
  TestFunction out{f.p, f.n, {}};
  out.atoms.reserve(f.atoms.size());
  for (const Atom& a : f.atoms) {
    require_atom_shape(a, f.n, "inverse_fourier");
    Atom b;
    b.coeff = a.coeff;
    Q e(0);
    long msum = 0;
    for (std::size_t i = 0; i < f.n; ++i) {
      e += a.center[i] * a.modulation[i];
      msum += a.scale[i];
    }
    b.coeff = b.coeff.times(Phase(frac_part(e, f.p))).times(pow_q(f.p, -msum));
    b.center.reserve(f.n);
    b.scale.reserve(f.n);
    b.modulation.reserve(f.n);
    for (std::size_t i = 0; i < f.n; ++i) {
      b.center.push_back(a.modulation[i]);
      b.scale.push_back(-a.scale[i]);
      b.modulation.push_back(-a.center[i]);
    }
    out.atoms.push_back(std::move(b));
  }
  return canonicalize(out);
}

TestFunction symplectic_fourier(const TestFunction& f) {
  if (f.n % 2 != 0)
    throw std::invalid_argument("symplectic_fourier: needs an even-dimensional function");
  std::size_t half = f.n / 2;
  TestFunction out = fourier(f);
  for (Atom& a : out.atoms) {
    // substitute z -> J0^{-1} z: rotate centers and modulations by J0,
    // swap the scale halves.
    auto rot = [&](std::vector<Q>& v) {
      std::vector<Q> w(f.n);
      for (std::size_t i = 0; i < half; ++i) {
        w[i] = v[half + i];
        w[half + i] = -v[i];
      }
      v = std::move(w);
    };
    rot(a.center);
    rot(a.modulation);
    std::vector<long> s(f.n);
    for (std::size_t i = 0; i < half; ++i) {
      s[i] = a.scale[half + i];
      s[half + i] = a.scale[i];
    }
    a.scale = std::move(s);
  }
  return canonicalize(out);
}

TestFunction schrodinger_apply(const HeisenbergElt& g, const TestFunction& psi) {
  if (g.z.size() != 2 * psi.n)
    throw std::invalid_argument("schrodinger_apply: group element dimension mismatch");
  TestFunction out{psi.p, psi.n, {}};
  out.atoms.reserve(psi.atoms.size());
  for (const Atom& a : psi.atoms) {
    require_atom_shape(a, psi.n, "schrodinger_apply");
    Atom b = a;
    Q e(0);
    for (std::size_t i = 0; i < psi.n; ++i) {
      const Q& x = g.z[i];
      const Q& y = g.z[psi.n + i];
      e += a.modulation[i] * x + x * y / 2;
      b.center[i] = a.center[i] - x;
      b.modulation[i] = a.modulation[i] + y;
    }
    b.coeff = a.coeff.times(g.phase * Phase(frac_part(e, psi.p)));
    out.atoms.push_back(std::move(b));
  }
  return canonicalize(out);
}

ComplexVal to_complexval(const PhaseSum& s) {
  if (auto t = s.single_term()) {
    auto [ph, q] = *t;
    if (q < 0) ph = ph * Phase(Q(1, 2));
    return ComplexVal::exact(ph, q * q);
  }
  if (s.empty()) return ComplexVal::exact(Phase(), Q(0));
  return ComplexVal::approx(s.value());
}

}  // namespace padiq
