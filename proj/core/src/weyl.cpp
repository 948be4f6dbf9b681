#include "padiq/weyl.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "padiq/oracle.hpp"

namespace padiq {

namespace {

Q pow_q(long p, long e) {
  Q q = q_of(p);
  Q out(1);
  for (long i = 0; i < (e >= 0 ? e : -e); ++i) out *= q;
  return e >= 0 ? out : Q(1) / out;
}

long val2(long p) { return p == 2 ? 1 : 0; }

void require_symbol(const TestFunction& f, const char* who) {
  if (f.n != 2) throw std::invalid_argument(std::string(who) + ": symbol must live on Q_p^2");
}

// Minimal valuation attained on B(c; s).
long ball_min_val(const Q& c, long s, long p) {
  if (c == 0) return s;
  return std::min(valuation_nonzero(c, p), s);
}

// chi(L x) is constant on cells of this scale.
long phase_scale(const Q& L, long p) {
  return L == 0 ? std::numeric_limits<long>::min() / 4 : -valuation_nonzero(L, p);
}

}  // namespace

PhaseSum weyl_kernel_sum(const TestFunction& f, const Q& xi, const Q& eta) {
  require_symbol(f, "weyl_kernel");
  PhaseSum total;
  Q mid = (xi + eta) / 2;
  Q diff = eta - xi;
  for (const Atom& a : f.atoms) {
    Q d1 = mid - a.center[0];
    if (d1 != 0 && valuation_nonzero(d1, f.p) < a.scale[0]) continue;
    Q t = diff + a.modulation[1];
    if (t != 0 && valuation_nonzero(t, f.p) < -a.scale[1]) continue;
    PhaseSum term = a.coeff.times(pow_q(f.p, -a.scale[1]));
    term = term.times(Phase(frac_part(a.modulation[0] * mid + t * a.center[1], f.p)));
    total += term;
  }
  return total;
}

ComplexVal weyl_kernel(const TestFunction& f, const Q& xi, const Q& eta) {
  return to_complexval(weyl_kernel_sum(f, xi, eta));
}

TestFunction weyl_apply(const TestFunction& f, const TestFunction& psi) {
  require_symbol(f, "weyl_apply");
  if (psi.n != 1) throw std::invalid_argument("weyl_apply: argument must live on Q_p");
  if (f.p != psi.p) throw std::invalid_argument("weyl_apply: prime mismatch");
  long p = f.p;
  long v2 = val2(p);

  TestFunction out{p, 1, {}};
  for (const Atom& fa : f.atoms)
    for (const Atom& pa : psi.atoms) {
      const Q& a1 = fa.center[0];
      const Q& a2 = fa.center[1];
      long m1 = fa.scale[0], m2 = fa.scale[1];
      const Q& b1 = fa.modulation[0];
      const Q& b2 = fa.modulation[1];
      const Q& alpha = pa.center[0];
      long mu = pa.scale[0];
      const Q& beta = pa.modulation[0];

      // The eta-integral runs over the intersection of three balls: psi's
      // support B(alpha; mu), the pullback of the first symbol ball
      // B(2 a1 - xi; m1 + v2), and the y-ball image B(xi - b2; -m2). Their
      // scales do not involve xi, so the finest ball is fixed; the
      // intersection equals it exactly when xi satisfies the two pairwise
      // overlap conditions touching it, each a ball condition on xi.
      long s1 = mu, s2 = m1 + v2, s3 = -m2;
      int star = (s1 >= s2 && s1 >= s3) ? 1 : (s2 >= s3 ? 2 : 3);
      long sstar = star == 1 ? s1 : star == 2 ? s2 : s3;

      Q L = b1 / 2 + a2 + beta;
      if (L != 0 && valuation_nonzero(L, p) < -sstar) continue;

      // Pairwise overlap conditions, rewritten as balls in xi.
      Q c12 = 2 * a1 - alpha;
      long e12 = std::min(s1, s2);
      Q c13 = alpha + b2;
      long e13 = std::min(s1, s3);
      Q c23 = a1 + b2 / 2;
      long e23 = std::min(s2, s3) - v2;

      BallIsect support;
      Q const_center;
      int mod_sign = 0;
      if (star == 1) {
        support = ball_intersect(c12, e12, c13, e13, p);
        const_center = alpha;
      } else if (star == 2) {
        support = ball_intersect(c12, e12, c23, e23, p);
        const_center = 2 * a1;
        mod_sign = -1;
      } else {
        support = ball_intersect(c13, e13, c23, e23, p);
        const_center = -b2;
        mod_sign = 1;
      }
      if (!support.nonempty) continue;

      Atom res;
      res.center = {support.center};
      res.scale = {support.scale};
      res.modulation = {b1 / 2 - a2 + mod_sign * L};
      res.coeff = (fa.coeff * pa.coeff).times(pow_q(p, -m2 - sstar));
      res.coeff = res.coeff.times(Phase(frac_part(b2 * a2 + L * const_center, p)));
      out.atoms.push_back(std::move(res));
    }
  return canonicalize(out);
}

PhaseSum composed_kernel_sum(const TestFunction& f, const TestFunction& g, const Q& xi,
                             const Q& eta) {
  require_symbol(f, "composed_kernel");
  require_symbol(g, "composed_kernel");
  if (f.p != g.p) throw std::invalid_argument("composed_kernel: prime mismatch");
  long p = f.p;
  long v2 = val2(p);

  PhaseSum total;
  for (const Atom& fa : f.atoms)
    for (const Atom& ga : g.atoms) {
      // The z-integrand is supported on four balls at once; in the
      // ultrametric, pairwise overlap makes the finest ball the
      // intersection.
      Q centers[4] = {2 * fa.center[0] - xi, xi - fa.modulation[1], 2 * ga.center[0] - eta,
                      eta + ga.modulation[1]};
      long scales[4] = {fa.scale[0] + v2, -fa.scale[1], ga.scale[0] + v2, -ga.scale[1]};
      int star = 0;
      for (int i = 1; i < 4; ++i)
        if (scales[i] > scales[star]) star = i;
      bool fits = true;
      for (int i = 0; i < 4 && fits; ++i) {
        if (i == star) continue;
        Q d = centers[star] - centers[i];
        fits = d == 0 || valuation_nonzero(d, p) >= scales[i];
      }
      if (!fits) continue;

      Q lam = fa.modulation[0] / 2 + fa.center[1] + ga.modulation[0] / 2 - ga.center[1];
      if (lam != 0 && valuation_nonzero(lam, p) < -scales[star]) continue;

      Q outer = fa.modulation[0] * xi / 2 - fa.center[1] * xi + fa.center[1] * fa.modulation[1] +
                ga.modulation[0] * eta / 2 + ga.center[1] * eta + ga.center[1] * ga.modulation[1];
      PhaseSum term = fa.coeff * ga.coeff;
      term = term.times(pow_q(p, -fa.scale[1] - ga.scale[1] - scales[star]));
      term = term.times(Phase(frac_part(outer + lam * centers[star], p)));
      total += term;
    }
  return total;
}

ComplexVal composed_kernel(const TestFunction& f, const TestFunction& g, const Q& xi,
                           const Q& eta) {
  return to_complexval(composed_kernel_sum(f, g, xi, eta));
}

namespace {

// Kernel at (xi, eta) of the Weyl operator whose symbol is the twisted
// convolution  h(z) = ii f(w) g(w') chi(-2 (J0(w,w') + J0(z, w-w'))) dw dw',
// without any normalizing constant. The w'-half has a closed form; the
// remaining w-plane and kernel-line integrals are flat sums at a certified
// locally-constant scale, so the quadrature is exact up to rounding.
std::complex<double> convolution_kernel_quadrature(const TestFunction& f, const TestFunction& g,
                                                   const Q& xi, const Q& eta) {
  long p = f.p;
  long v2 = val2(p);
  PrimeCtx ctx{p, 6};
  Q z1 = (xi + eta) / 2;
  Q dphase = eta - xi;

  std::complex<double> acc{0.0, 0.0};
  for (const Atom& fa : f.atoms)
    for (const Atom& ga : g.atoms) {
      const Q& a1 = fa.center[0];
      const Q& a2 = fa.center[1];
      long m1 = fa.scale[0], m2 = fa.scale[1];
      const Q& b1 = fa.modulation[0];
      const Q& b2 = fa.modulation[1];
      const Q& A1 = ga.center[0];
      const Q& A2 = ga.center[1];
      long M1 = ga.scale[0], M2 = ga.scale[1];
      const Q& B1 = ga.modulation[0];
      const Q& B2 = ga.modulation[1];

      // The w'-integral vanishes unless v(B1 + 2 w_2 - 2 y) >= -M1, which
      // confines y to one ball as w_2 sweeps f's second coordinate.
      Q y0 = B1 / 2 + a2;
      long sigma_y = std::min(m2, -M1 - v2);

      long ty = sigma_y;
      ty = std::max(ty, phase_scale(dphase, p));
      ty = std::max(ty, phase_scale(2 * A1, p));
      ty = std::max(ty, -M1 - v2);
      ty = std::max(ty, -v2 - ball_min_val(a1, m1, p));

      BallDomain ydom{{y0}, {static_cast<int>(sigma_y)}};
      auto inner_at_y = [&](const std::vector<Q>& ys) -> std::complex<double> {
        const Q& y = ys[0];
        // w-plane cell scale keeping every phase and indicator constant.
        long t1 = std::max(m1, -M2 - v2);
        t1 = std::max(t1, phase_scale(b1 + 2 * y - 2 * A2, p));
        long t2 = std::max(m2, -M1 - v2);
        t2 = std::max(t2, phase_scale(b2 - 2 * z1 + 2 * A1, p));
        int depth = static_cast<int>(std::max({t1 - m1, t2 - m2, 0L}));

        BallDomain wdom{{a1, a2}, {static_cast<int>(m1), static_cast<int>(m2)}};
        auto wphase = [&](const std::vector<Q>& w) -> std::complex<double> {
          Q k1 = B1 + 2 * w[1] - 2 * y;
          if (k1 != 0 && valuation_nonzero(k1, p) < -M1) return {0.0, 0.0};
          Q k2 = B2 - 2 * w[0] + 2 * z1;
          if (k2 != 0 && valuation_nonzero(k2, p) < -M2) return {0.0, 0.0};
          Q e = b1 * w[0] + b2 * w[1] + 2 * y * w[0] - 2 * z1 * w[1] + k1 * A1 + k2 * A2;
          return Phase(frac_part(e, p)).value();
        };
        std::complex<double> wsum = ball_sum(ctx, wdom, depth, wphase);
        return Phase(frac_part(dphase * y, p)).value() * wsum;
      };
      int ydepth = static_cast<int>(std::max(ty - sigma_y, 0L));
      std::complex<double> ysum = ball_sum(ctx, ydom, ydepth, inner_at_y);
      double vol = pow_q(p, -M1 - M2).get_d();
      acc += fa.coeff.value() * ga.coeff.value() * vol * ysum;
    }
  return acc;
}

}  // namespace

KernelComposeReport kernel_compose(const TestFunction& f, const TestFunction& g,
                                   std::vector<std::pair<Q, Q>> sample_points) {
  require_symbol(f, "kernel_compose");
  require_symbol(g, "kernel_compose");
  if (f.p != g.p) throw std::invalid_argument("kernel_compose: prime mismatch");
  long p = f.p;
  if (sample_points.empty()) {
    Q ip = Q(1) / q_of(p);
    sample_points = {{Q(0), Q(0)}, {Q(1), Q(0)}, {ip, Q(0)}, {ip, ip}, {Q(1), ip}};
  }

  KernelComposeReport rep;
  std::complex<double> ratio_sum{0.0, 0.0};
  std::size_t ratio_count = 0;
  for (const auto& [xi, eta] : sample_points) {
    KernelSample s;
    s.xi = xi;
    s.eta = eta;
    s.closed_form = composed_kernel(f, g, xi, eta).c();
    s.quadrature = convolution_kernel_quadrature(f, g, xi, eta);
    if (std::abs(s.quadrature) > 1e-9) {
      ratio_sum += s.closed_form / s.quadrature;
      ++ratio_count;
    }
    rep.samples.push_back(std::move(s));
  }
  if (ratio_count == 0) {
    rep.indeterminate = true;
    return rep;
  }
  rep.fitted_c = ratio_sum / static_cast<double>(ratio_count);
  for (const KernelSample& s : rep.samples)
    rep.max_abs_deviation =
        std::max(rep.max_abs_deviation, std::abs(s.closed_form - rep.fitted_c * s.quadrature));
  return rep;
}

}  // namespace padiq
