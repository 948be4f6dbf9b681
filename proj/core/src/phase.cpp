#include "padiq/phase.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

namespace padiq {

Q mod_one(const Q& q) {
  Z fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  Q r = q - Q(fl);
  r.canonicalize();
  return r;
}

std::complex<double> Phase::value() const {
  // quarter turns are exact doubles; cos/sin would smear them by an ulp
  if (q == 0) return {1.0, 0.0};
  if (q.get_den() == 2) return {-1.0, 0.0};
  if (q.get_den() == 4) return q.get_num() == 1 ? std::complex<double>{0.0, 1.0}
                                                : std::complex<double>{0.0, -1.0};
  double t = 2.0 * std::numbers::pi * q.get_d();
  return {std::cos(t), std::sin(t)};
}

PhaseSum PhaseSum::of(const Phase& ph, const Q& scale) {
  PhaseSum s;
  if (scale != 0) s.terms_[ph.q] = scale;
  return s;
}

PhaseSum PhaseSum::complex_rational(const Q& re, const Q& im) {
  PhaseSum s = of(Phase(), re);
  s += of(Phase(Q(1, 4)), im);
  return s;
}

PhaseSum& PhaseSum::operator+=(const PhaseSum& o) {
  for (const auto& [q, c] : o.terms_) {
    auto it = terms_.find(q);
    if (it == terms_.end()) {
      terms_.emplace(q, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

PhaseSum PhaseSum::operator+(const PhaseSum& o) const {
  PhaseSum r = *this;
  r += o;
  return r;
}

PhaseSum PhaseSum::operator-() const {
  PhaseSum r;
  for (const auto& [q, c] : terms_) r.terms_.emplace(q, -c);
  return r;
}

PhaseSum PhaseSum::operator-(const PhaseSum& o) const { return *this + (-o); }

PhaseSum PhaseSum::times(const Phase& ph) const {
  PhaseSum r;
  for (const auto& [q, c] : terms_) r.terms_[mod_one(q + ph.q)] = c;
  return r;
}

PhaseSum PhaseSum::times(const Q& scale) const {
  PhaseSum r;
  if (scale == 0) return r;
  for (const auto& [q, c] : terms_) r.terms_.emplace(q, c * scale);
  return r;
}

PhaseSum PhaseSum::operator*(const PhaseSum& o) const {
  PhaseSum r;
  for (const auto& [q, c] : terms_) r += o.times(Phase(q)).times(c);
  return r;
}

PhaseSum PhaseSum::conj() const {
  PhaseSum r;
  for (const auto& [q, c] : terms_) r.terms_[mod_one(-q)] = c;
  return r;
}

std::complex<double> PhaseSum::value() const {
  std::complex<double> z{0.0, 0.0};
  for (const auto& [q, c] : terms_) z += c.get_d() * Phase(q).value();
  return z;
}

std::optional<std::pair<Phase, Q>> PhaseSum::single_term() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [q, c] = *terms_.begin();
  if (c > 0) return std::make_pair(Phase(q), c);
  return std::make_pair(Phase(q + Q(1, 2)), Q(-c));
}

namespace {

// Dense integer polynomials, ascending coefficients.
using Poly = std::vector<Z>;

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Exact division a / b over Z (remainder known to vanish, b monic-led here).
Poly poly_div_exact(Poly a, const Poly& b) {
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Z(0));
  while (a.size() >= b.size() && !a.empty()) {
    Z c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    poly_trim(a);
  }
  return q;
}

Poly cyclotomic(unsigned long n) {
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  Poly num(n + 1, Z(0));
  num[0] = -1;
  num[n] = 1;
  for (unsigned long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = poly_div_exact(std::move(num), cyclotomic(d));
  }
  return num;
}

// Remainder of a modulo b over Q (b has integer coefficients, unit lead for
// cyclotomics).
bool poly_divides(const Poly& b, std::vector<Q> a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  while (a.size() >= b.size() && !a.empty()) {
    Q c = a.back() / Q(b.back());
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * Q(b[i]);
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a.empty();
}

}  // namespace

bool PhaseSum::is_zero() const {
  if (terms_.empty()) return true;
  if (terms_.size() == 1) return false;
  // Cheap numeric prefilter: sums comfortably away from zero need no algebra.
  double bound = 0.0;
  for (const auto& [q, c] : terms_) bound += std::fabs(c.get_d());
  std::complex<double> z = value();
  if (std::abs(z) > bound * 1e-9 + 1e-280) return false;

  Z ncm(1);
  for (const auto& [q, c] : terms_) mpz_lcm(ncm.get_mpz_t(), ncm.get_mpz_t(), q.get_den().get_mpz_t());
  unsigned long n = ncm.get_ui();
  std::vector<Q> poly(n, Q(0));
  for (const auto& [q, c] : terms_) {
    Z e = q.get_num() * (ncm / q.get_den());
    poly[e.get_ui() % n] += c;
  }
  return poly_divides(cyclotomic(n), std::move(poly));
}

ComplexVal ComplexVal::exact(const Phase& ph, const Q& mod_sq) {
  if (mod_sq < 0) throw std::domain_error("ComplexVal: negative squared modulus");
  ComplexVal v;
  v.exact_phase = ph;
  v.exact_mod_sq = mod_sq;
  std::complex<double> z = std::sqrt(mod_sq.get_d()) * ph.value();
  v.re = z.real();
  v.im = z.imag();
  return v;
}

ComplexVal ComplexVal::operator*(const ComplexVal& o) const {
  if (is_exact() && o.is_exact())
    return exact(*exact_phase * *o.exact_phase, *exact_mod_sq * *o.exact_mod_sq);
  return approx(c() * o.c());
}

ComplexVal ComplexVal::conj() const {
  if (is_exact()) return exact(exact_phase->conj(), *exact_mod_sq);
  return approx(std::conj(c()));
}

}  // namespace padiq
