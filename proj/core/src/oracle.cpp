#include "padiq/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace padiq {

namespace {

Q pow_p(long p, long e) {
  Z pk;
  mpz_pow_ui(pk.get_mpz_t(), Z(p).get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  Q r = (e >= 0) ? Q(pk) : Q(1, pk);
  r.canonicalize();
  return r;
}

// Smallest t with val(a) + 2t >= 0.
long quad_leaf_scale(long va) { return va >= 0 ? 0 : (-va + 1) / 2; }

std::size_t checked_cells(long p, int digits, std::size_t max_cells) {
  std::size_t n = 1;
  for (int i = 0; i < digits; ++i) {
    if (n > max_cells / static_cast<std::size_t>(p))
      throw std::invalid_argument("ball_sum_oracle: cell count exceeds budget");
    n *= static_cast<std::size_t>(p);
  }
  return n;
}

// Calls fn at the p^depth canonical sub-ball centers of B(center; scale),
// in digit order.
void enum_axis(long p, const Q& center, int scale, int depth,
               const std::function<void(const Q&)>& fn) {
  if (depth == 0) {
    fn(center);
    return;
  }
  std::vector<int> dig(static_cast<std::size_t>(depth), 0);
  std::vector<Q> steps(static_cast<std::size_t>(depth));
  for (int t = 0; t < depth; ++t) steps[static_cast<std::size_t>(t)] = pow_p(p, scale + t);
  Q x = center;
  for (;;) {
    fn(x);
    int t = 0;
    while (t < depth) {
      auto ut = static_cast<std::size_t>(t);
      if (dig[ut] + 1 < p) {
        ++dig[ut];
        x += steps[ut];
        break;
      }
      x -= steps[ut] * (p - 1);
      dig[ut] = 0;
      ++t;
    }
    if (t == depth) break;
  }
}

std::complex<double> eval_integrand(const IntegrandSpec& spec, long p, const Q& x) {
  switch (spec.kind) {
    case IntegrandSpec::Kind::quadratic_character:
      return Phase(frac_part(spec.a * x * x + spec.b * x, p)).value();
    case IntegrandSpec::Kind::pure_character:
      return Phase(frac_part(spec.xi * x, p)).value();
    case IntegrandSpec::Kind::radial_profile: {
      if (x == 0) return {0.0, 0.0};
      auto it = spec.profile.find(-valuation_nonzero(x, p));
      return it == spec.profile.end() ? std::complex<double>{0.0, 0.0} : it->second.c();
    }
  }
  return {0.0, 0.0};
}

}  // namespace

std::complex<double> ball_sum(const PrimeCtx& ctx, const BallDomain& dom, int depth,
                              const std::function<std::complex<double>(const std::vector<Q>&)>& f,
                              std::size_t max_cells) {
  if (dom.center.size() != dom.scale.size() || dom.center.empty())
    throw std::invalid_argument("ball_sum: malformed domain");
  if (depth < 0) throw std::invalid_argument("ball_sum: negative depth");
  std::size_t n = dom.center.size();
  checked_cells(ctx.p, depth * static_cast<int>(n), max_cells);
  Q vol(1);
  for (std::size_t i = 0; i < n; ++i) vol *= pow_p(ctx.p, -(dom.scale[i] + depth));
  std::complex<double> acc{0.0, 0.0};
  std::vector<Q> xs(n);
  std::function<void(std::size_t)> rec = [&](std::size_t axis) {
    if (axis == n) {
      acc += f(xs);
      return;
    }
    enum_axis(ctx.p, dom.center[axis], dom.scale[axis], depth, [&](const Q& x) {
      xs[axis] = x;
      rec(axis + 1);
    });
  };
  rec(0);
  return acc * vol.get_d();
}

ComplexVal ball_sum_oracle(const PrimeCtx& ctx, const IntegrandSpec& spec, int truncation_depth,
                           std::size_t max_cells) {
  if (truncation_depth < 1) throw std::invalid_argument("ball_sum_oracle: depth must be positive");
  long p = ctx.p;
  std::complex<double> acc{0.0, 0.0};
  if (const auto* ball = std::get_if<BallDomain>(&spec.domain)) {
    if (ball->center.size() != 1)
      throw std::invalid_argument("ball_sum_oracle: integrands are one-dimensional");
    checked_cells(p, truncation_depth, max_cells);
    enum_axis(p, ball->center[0], ball->scale[0], truncation_depth,
              [&](const Q& x) { acc += eval_integrand(spec, p, x); });
    return ComplexVal::approx(acc * pow_p(p, -(ball->scale[0] + truncation_depth)).get_d());
  }
  const auto& shell = std::get<ShellDomain>(spec.domain);
  checked_cells(p, truncation_depth, max_cells);
  int d = truncation_depth;
  // Sub-balls of |x| = p^nu at scale -nu + d: leading digit nonzero.
  for (long u0 = 1; u0 < p; ++u0) {
    enum_axis(p, pow_p(p, -shell.nu) * u0, static_cast<int>(-shell.nu) + 1, d - 1,
              [&](const Q& x) { acc += eval_integrand(spec, p, x); });
  }
  return ComplexVal::approx(acc * pow_p(p, shell.nu - d).get_d());
}

namespace {

// Fully refined sub-ball sum of chi(a x^2 + b x) over B(c; s). Rules:
// constant once the in-box increments of the phase are integral; a
// nontrivial linear character over a ball sums to zero exactly; when the
// linear increment strictly dominates the quadratic one on every sub-ball
// and still oscillates at the leaf scale, the whole sub-tree cancels.
std::complex<double> qint(long p, const Q& a, const Q& b, const Q& c, long s) {
  Q L = 2 * a * c + b;
  long v2 = (p == 2) ? 1 : 0;
  bool quad_const = (a == 0) || (valuation_nonzero(a, p) + 2 * s >= 0);
  if (quad_const) {
    if (L != 0 && valuation_nonzero(L, p) + s < 0) return {0.0, 0.0};
    double vol = std::pow(static_cast<double>(p), static_cast<double>(-s));
    return Phase(frac_part(a * c * c + b * c, p)).value() * vol;
  }
  long va = valuation_nonzero(a, p);
  if (L != 0) {
    long vL = valuation_nonzero(L, p);
    long t = quad_leaf_scale(va);
    if (v2 + va + s > vL && vL + t < 0) return {0.0, 0.0};
  }
  std::complex<double> acc{0.0, 0.0};
  Q step = pow_p(p, s);
  Q child = c;
  for (long j = 0; j < p; ++j) {
    acc += qint(p, a, b, child, s + 1);
    child += step;
  }
  return acc;
}

}  // namespace

std::complex<double> quadratic_ball_integral(long p, const Q& a, const Q& b, const Q& center,
                                             int scale) {
  return qint(p, a, b, center, scale);
}

std::complex<double> quadratic_shell_integral(long p, const Q& a, const Q& b, long nu) {
  std::complex<double> acc{0.0, 0.0};
  Q step = pow_p(p, -nu);
  Q c = step;
  for (long j = 1; j < p; ++j) {
    acc += qint(p, a, b, c, -nu + 1);
    c += step;
  }
  return acc;
}

std::complex<double> quadratic_line_integral(long p, const Q& a, const Q& b) {
  if (a == 0) throw std::domain_error("quadratic_line_integral: a must be nonzero");
  long v2 = (p == 2) ? 1 : 0;
  long va = valuation_nonzero(a, p);
  long t = quad_leaf_scale(va);
  long m = std::max({(va + 2) / 2 + 1, v2 + va + t, long(1)});
  if (b != 0) m = std::max(m, v2 + va - valuation_nonzero(b, p));
  // Shells past radius p^m cancel: their leaf balls all carry a dominant
  // oscillating linear term.
  return qint(p, a, b, Q(0), -(m + 1));
}

int quadratic_constancy_depth(long p, const Q& a, const Q& b, const Q& center, int scale) {
  long v2 = (p == 2) ? 1 : 0;
  long vx = (center == 0) ? scale : std::min<long>(valuation_nonzero(center, p), scale);
  long s_needed = scale;
  if (a != 0) {
    long va = valuation_nonzero(a, p);
    s_needed = std::max(s_needed, quad_leaf_scale(va));
    s_needed = std::max(s_needed, -(v2 + va + vx));
  }
  if (b != 0) s_needed = std::max(s_needed, -valuation_nonzero(b, p));
  return std::max(1, static_cast<int>(s_needed - scale));
}

}  // namespace padiq
