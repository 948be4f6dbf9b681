#include "padiq/characters.hpp"

#include <stdexcept>

namespace padiq {

namespace {

// (k mod 2, first digits of the unit part): a1, a2 only used at p = 2.
struct Split {
  long k;
  Z a0;   // odd p: unit residue mod p
  int a1; // p = 2
  int a2; // p = 2
};

Split split_for_lambda(const Q& a, long p) {
  auto [k, u] = unit_split(a, p);
  Split s{k, Z(0), 0, 0};
  if (p == 2) {
    long r = residue_mod_pk(u, 2, 3).get_si();  // 1, 3, 5, 7
    s.a1 = static_cast<int>((r >> 1) & 1);
    s.a2 = static_cast<int>((r >> 2) & 1);
  } else {
    s.a0 = residue_mod_pk(u, p, 1);
  }
  return s;
}

}  // namespace

ComplexVal lambda_factor(const Q& a, long p) {
  if (a == 0) throw std::domain_error("lambda_factor: a must be nonzero");
  Split s = split_for_lambda(a, p);
  if (p == 2) {
    // 1 + (-1)^{a1} i has phase 1/8 (a1 = 0) or -1/8 (a1 = 1), modulus sqrt 2.
    Q q = (s.a1 == 0) ? Q(1, 8) : Q(7, 8);
    if ((s.k % 2 + 2) % 2 == 1 && ((s.a1 + s.a2) % 2 == 1)) q += Q(1, 2);
    return ComplexVal::exact(Phase(q), Q(2));
  }
  if (s.k % 2 == 0) return ComplexVal::exact(Phase(), Q(1));
  int eps = legendre(s.a0, p);
  Q q = (eps == 1) ? Q(0) : Q(1, 2);
  if (p % 4 == 3) q += Q(1, 4);
  return ComplexVal::exact(Phase(q), Q(1));
}

std::string lambda_case(const Q& a, long p) {
  Split s = split_for_lambda(a, p);
  bool odd_k = ((s.k % 2) + 2) % 2 == 1;
  if (p == 2) return odd_k ? "p2_val_odd" : "p2_val_even";
  if (!odd_k) return "val_even";
  return (p % 4 == 1) ? "val_odd_p_1_mod_4" : "val_odd_p_3_mod_4";
}

ComplexVal lambda_normalized(const Q& a, long p) {
  ComplexVal l = lambda_factor(a, p);
  return ComplexVal::exact(*l.exact_phase, Q(1));
}

ComplexVal gauss_integral(const Q& a, const Q& b, long p) {
  if (a == 0) throw std::domain_error("gauss_integral: a must be nonzero");
  ComplexVal l = lambda_factor(a, p);
  long k = valuation_nonzero(a, p);
  Z pk;
  mpz_pow_ui(pk.get_mpz_t(), Z(p).get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
  Q inv_norm = (k >= 0) ? Q(pk) : Q(1, pk);  // 1 / |a|_p
  inv_norm.canonicalize();
  Phase shift = character(Q(-b * b) / (4 * a), Q(1), p);
  return ComplexVal::exact(*l.exact_phase * shift, *l.exact_mod_sq * inv_norm);
}

ComplexVal shell_integral(const Q& xi, long nu, long p) {
  Z pw;
  mpz_pow_ui(pw.get_mpz_t(), Z(p).get_mpz_t(), static_cast<unsigned long>(nu < 0 ? -nu : nu));
  Q pnu = (nu >= 0) ? Q(pw) : Q(1, pw);
  pnu.canonicalize();
  long e = (xi == 0) ? std::numeric_limits<long>::min() : -valuation_nonzero(xi, p);  // |xi| = p^e
  if (xi == 0 || e <= -nu) {
    Q v = pnu * (Q(p - 1) / p);
    return ComplexVal::exact(Phase(), v * v);
  }
  if (e == -nu + 1) {
    Q v = pnu / p;
    return ComplexVal::exact(Phase(Q(1, 2)), v * v);
  }
  return ComplexVal::exact(Phase(), Q(0));
}

ComplexVal radial_transform(const std::map<long, ComplexVal>& profile, const Q& xi, long p) {
  if (xi == 0) throw std::domain_error("radial_transform: xi must be nonzero");
  long e = -valuation_nonzero(xi, p);  // |xi| = p^e
  Q inv_norm = padic_norm(Q(1) / xi, p);
  std::complex<double> sum{0.0, 0.0};
  // (1 - 1/p) |xi|^{-1} sum_{nu >= 0} p^{-nu} f(p^{-nu}/|xi|)
  for (const auto& [key, val] : profile) {
    long nu = -key - e;
    if (nu < 0) continue;
    Q w = inv_norm * (Q(p - 1) / p);
    Z pw;
    mpz_pow_ui(pw.get_mpz_t(), Z(p).get_mpz_t(), static_cast<unsigned long>(nu));
    w /= Q(pw);
    sum += w.get_d() * val.c();
  }
  auto tail = profile.find(1 - e);
  if (tail != profile.end()) sum -= inv_norm.get_d() * tail->second.c();
  return ComplexVal::approx(sum);
}

ComplexVal constant_c(long p) {
  ComplexVal l1 = lambda_factor(Q(1, 4), p);
  ComplexVal l2 = lambda_factor(Q(-1, 4), p);
  Q n4 = padic_norm(Q(4), p);
  ComplexVal prod = l1 * l2;
  return ComplexVal::exact(*prod.exact_phase, *prod.exact_mod_sq * n4 * n4);
}

}  // namespace padiq
