#pragma once

#include <complex>
#include <map>
#include <optional>

#include "padiq/rational.hpp"

namespace padiq {

/// Reduce q into [0,1).
Q mod_one(const Q& q);

/// Unit phase e^{2 pi i q} carried as the exact rational exponent q in [0,1).
struct Phase {
  Q q;

  Phase() : q(0) {}
  explicit Phase(const Q& exponent) : q(mod_one(exponent)) {}

  Phase operator*(const Phase& o) const { return Phase(q + o.q); }
  Phase conj() const { return Phase(-q); }
  Phase pow(long e) const { return Phase(q * e); }
  std::complex<double> value() const;

  friend bool operator==(const Phase&, const Phase&) = default;
};

/// Finite sum  sum_i c_i e^{2 pi i q_i}  with rational c_i, q_i: the group
/// ring Q[Q/Z]. Closed under addition, phase multiplication and conjugation,
/// so atom coefficients stay exact through every composition. Zero testing
/// reduces modulo the cyclotomic polynomial of the common denominator.
class PhaseSum {
 public:
  PhaseSum() = default;
  static PhaseSum zero() { return {}; }
  static PhaseSum one() { return of(Phase(), Q(1)); }
  static PhaseSum of(const Phase& ph, const Q& scale);
  static PhaseSum real(const Q& scale) { return of(Phase(), scale); }
  /// re + im*i, both exact.
  static PhaseSum complex_rational(const Q& re, const Q& im);

  PhaseSum& operator+=(const PhaseSum& o);
  PhaseSum operator+(const PhaseSum& o) const;
  PhaseSum operator-() const;
  PhaseSum operator-(const PhaseSum& o) const;
  PhaseSum times(const Phase& ph) const;
  PhaseSum times(const Q& scale) const;
  PhaseSum operator*(const PhaseSum& o) const;
  PhaseSum conj() const;

  bool is_zero() const;  // exact (value in C, not mere term-wise) zero test
  bool equals(const PhaseSum& o) const { return (*this - o).is_zero(); }

  std::complex<double> value() const;
  bool empty() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  /// When the value is a single rational multiple of a unit phase, expose it.
  std::optional<std::pair<Phase, Q>> single_term() const;

  const std::map<Q, Q>& terms() const { return terms_; }

 private:
  std::map<Q, Q> terms_;  // exponent in [0,1) -> nonzero rational scale
};

/// Numeric complex value, optionally tagged with an exact polar form
/// (unit phase exponent and squared modulus).
struct ComplexVal {
  double re = 0.0;
  double im = 0.0;
  std::optional<Phase> exact_phase;
  std::optional<Q> exact_mod_sq;

  static ComplexVal approx(std::complex<double> z) {
    ComplexVal v;
    v.re = z.real();
    v.im = z.imag();
    return v;
  }
  static ComplexVal exact(const Phase& ph, const Q& mod_sq);

  std::complex<double> c() const { return {re, im}; }
  bool is_exact() const { return exact_phase.has_value() && exact_mod_sq.has_value(); }
  ComplexVal operator*(const ComplexVal& o) const;
  ComplexVal conj() const;
};

}  // namespace padiq
