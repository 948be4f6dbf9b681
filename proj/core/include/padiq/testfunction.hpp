#pragma once

#include <cstddef>
#include <vector>

#include "padiq/padic.hpp"
#include "padiq/phase.hpp"

namespace padiq {

// Element (z; alpha) of the Heisenberg group over Q_p^{2n}.
struct HeisenbergElt {
  std::vector<Q> z;  // (x_1..x_n, y_1..y_n)
  Phase phase;
};

HeisenbergElt h_identity(std::size_t n);
HeisenbergElt h_mul(const HeisenbergElt& g1, const HeisenbergElt& g2, long p);
HeisenbergElt h_inverse(const HeisenbergElt& g);

// c * prod_i chi(b_i x_i) on the box prod_i B(center_i; scale_i), 0 outside.
// Canonical form: modulation digits live strictly below position -scale,
// center digits strictly below position scale; everything else is folded
// into the coefficient.
struct Atom {
  PhaseSum coeff;
  std::vector<Q> center;
  std::vector<long> scale;
  std::vector<Q> modulation;
};

// Finite sum of atoms; the exact model of locally constant compactly
// supported functions on Q_p^n.
struct TestFunction {
  long p = 2;
  std::size_t n = 1;
  std::vector<Atom> atoms;

  static TestFunction zero(long p, std::size_t n) { return {p, n, {}}; }
  /// Indicator of Z_p^n.
  static TestFunction indicator(long p, std::size_t n);
  static TestFunction single(long p, Atom a);
};

// Representative of x modulo p^scale Z_p whose digits sit strictly below
// position scale.
Q reduce_mod_scale(const Q& x, long scale, long p);

// Sort, reduce to canonical atom form, merge identical boxes+modulations,
// drop exact zeros. Deterministic regardless of input order.
TestFunction canonicalize(const TestFunction& f);

TestFunction tf_add(const TestFunction& f, const TestFunction& g);
TestFunction tf_scale(const TestFunction& f, const PhaseSum& c);

PhaseSum tf_eval_sum(const TestFunction& f, const std::vector<Q>& point);
ComplexVal tf_eval(const TestFunction& f, const std::vector<Q>& point);

// integral of f conj(g), exact.
PhaseSum tf_inner_sum(const TestFunction& f, const TestFunction& g);
ComplexVal tf_inner(const TestFunction& f, const TestFunction& g);

// Exact zero test: refine to the common finest scale, where distinct
// canonical atoms are linearly independent. Falls back to a dense sampled
// comparison (tolerance 1e-12) if refinement would exceed the cell budget.
bool tf_is_zero(const TestFunction& f, std::size_t max_cells = std::size_t(1) << 18);
bool tf_equal(const TestFunction& f, const TestFunction& g,
              std::size_t max_cells = std::size_t(1) << 18);

// F[f](xi) = integral f(x) chi(xi . x) dx; exact atom closed form.
TestFunction fourier(const TestFunction& f);
TestFunction inverse_fourier(const TestFunction& f);

// F_s[f](J0 z) = F[f](z); f lives on Q_p^{2n} (even atom dimension).
TestFunction symplectic_fourier(const TestFunction& f);

// Schroedinger action: (z; alpha) sends psi to alpha psi(. + x) chi(y . xi + x.y/2).
TestFunction schrodinger_apply(const HeisenbergElt& g, const TestFunction& psi);

ComplexVal to_complexval(const PhaseSum& s);

// Intersection of B(c1; s1) and B(c2; s2): empty, or the finer ball.
struct BallIsect {
  bool nonempty = false;
  Q center;
  long scale = 0;
};
BallIsect ball_intersect(const Q& c1, long s1, const Q& c2, long s2, long p);

// integral over B(c; s) of chi(L x) dx: p^{-s} chi(L c) when |L| <= p^s,
// else 0. Single exact term.
PhaseSum char_ball_integral(const Q& L, const Q& c, long s, long p);

}  // namespace padiq
