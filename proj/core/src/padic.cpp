#include "padiq/padic.hpp"

#include <cctype>

namespace padiq {

Q parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  bool digit_seen = false;
  bool slash_seen = false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] == '/') {
      if (slash_seen || !digit_seen || j + 1 == s.size()) throw std::invalid_argument("malformed rational literal: " + s);
      slash_seen = true;
      digit_seen = false;
    } else if (std::isdigit(static_cast<unsigned char>(s[j]))) {
      digit_seen = true;
    } else {
      throw std::invalid_argument("malformed rational literal: " + s);
    }
  }
  if (!digit_seen) throw std::invalid_argument("malformed rational literal: " + s);
  Q q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string format_rational(const Q& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

long mpz_val(const Z& n, long p) {
  // n != 0
  Z tmp;
  return static_cast<long>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), Z(p).get_mpz_t()));
}

}  // namespace

std::optional<long> valuation(const Q& x, long p) {
  if (x == 0) return std::nullopt;
  long v = mpz_val(x.get_num(), p);
  if (v == 0) v -= mpz_val(x.get_den(), p);
  return v;
}

long valuation_nonzero(const Q& x, long p) {
  auto v = valuation(x, p);
  if (!v) throw std::domain_error("valuation of zero");
  return *v;
}

Q padic_norm(const Q& x, long p) {
  if (x == 0) return Q(0);
  long v = valuation_nonzero(x, p);
  Z pk;
  mpz_pow_ui(pk.get_mpz_t(), Z(p).get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
  Q r = (v >= 0) ? Q(1, pk) : Q(pk);
  r.canonicalize();
  return r;
}

std::pair<long, Q> unit_split(const Q& x, long p) {
  long v = valuation_nonzero(x, p);
  Z pk;
  mpz_pow_ui(pk.get_mpz_t(), Z(p).get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
  Q u = (v >= 0) ? Q(x / Q(pk)) : Q(x * Q(pk));
  u.canonicalize();
  return {v, u};
}

Z residue_mod_pk(const Q& x, long p, int k) {
  if (k <= 0) throw std::invalid_argument("residue_mod_pk: k must be positive");
  Z pk;
  mpz_pow_ui(pk.get_mpz_t(), Z(p).get_mpz_t(), static_cast<unsigned long>(k));
  const Z& den = x.get_den();
  if (mpz_divisible_p(den.get_mpz_t(), Z(p).get_mpz_t()))
    throw std::domain_error("residue_mod_pk: not a p-adic integer");
  Z inv;
  if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pk.get_mpz_t()))
    throw std::domain_error("residue_mod_pk: denominator not invertible");
  Z r = (x.get_num() % pk) * inv % pk;
  if (r < 0) r += pk;
  return r;
}

Q frac_part(const Q& x, long p) {
  if (x == 0) return Q(0);
  long m = mpz_val(x.get_den(), p);
  if (m == 0) return Q(0);
  Z pm;
  mpz_pow_ui(pm.get_mpz_t(), Z(p).get_mpz_t(), static_cast<unsigned long>(m));
  Z bprime = x.get_den() / pm;
  Z inv;
  mpz_invert(inv.get_mpz_t(), bprime.get_mpz_t(), pm.get_mpz_t());
  Z u = (x.get_num() % pm) * inv % pm;
  if (u < 0) u += pm;
  Q r(u, pm);
  r.canonicalize();
  return r;
}

std::pair<long, std::vector<int>> digits(const Q& x, long p, int count) {
  if (count < 0) throw std::invalid_argument("digits: negative count");
  auto [k, u] = unit_split(x, p);
  std::vector<int> ds;
  ds.reserve(static_cast<std::size_t>(count));
  Q cur = u;
  for (int i = 0; i < count; ++i) {
    long d = (cur == 0) ? 0 : residue_mod_pk(cur, p, 1).get_si();
    ds.push_back(static_cast<int>(d));
    cur = (cur - d) / p;
    cur.canonicalize();
  }
  return {k, ds};
}

int legendre(const Z& a, long p) {
  if (p == 2) throw std::domain_error("legendre: p must be odd");
  return mpz_legendre(a.get_mpz_t(), Z(p).get_mpz_t());
}

long least_nonresidue(long p) {
  for (long n = 2;; ++n) {
    if (legendre(Z(n), p) == -1) return n;
  }
}

SquareClass square_class(const Q& x, long p) {
  if (x == 0) throw std::domain_error("square_class of zero");
  auto [k, u] = unit_split(x, p);
  int parity = static_cast<int>(((k % 2) + 2) % 2);
  if (p == 2) {
    long r = residue_mod_pk(u, 2, 3).get_si();
    return {parity, r};
  }
  Z r = residue_mod_pk(u, p, 1);
  long rep = (legendre(r, p) == 1) ? 1 : least_nonresidue(p);
  return {parity, rep};
}

bool is_padic_square(const Q& x, long p) {
  SquareClass c = square_class(x, p);
  return c.parity == 0 && c.unit_rep == 1;
}

}  // namespace padiq
