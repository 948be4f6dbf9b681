#include "padiq/maslov.hpp"

#include <cmath>
#include <stdexcept>

#include "padiq/characters.hpp"
#include "padiq/oracle.hpp"

namespace padiq {

namespace {

void require_distinct(const LagrangianLine& l1, const LagrangianLine& l2,
                      const LagrangianLine& l3) {
  if (l1 == l2 || l2 == l3 || l1 == l3) throw std::domain_error("degenerate configuration");
}

}  // namespace

Q maslov_kappa(const LagrangianLine& l1, const LagrangianLine& l2, const LagrangianLine& l3) {
  require_distinct(l1, l2, l3);
  // Rotate the vertical line into the last slot; the index is invariant
  // under cyclic shifts.
  if (l1.star) return maslov_kappa(l2, l3, l1);
  if (l2.star) return maslov_kappa(l3, l1, l2);
  const Q& a = l1.a;
  const Q& b = l2.a;
  if (l3.star) return a - b;
  const Q& c = l3.a;
  return (c - b) * (a - c) / (b - a);
}

ComplexVal maslov_index(const LagrangianLine& l1, const LagrangianLine& l2,
                        const LagrangianLine& l3, long p) {
  return lambda_normalized(maslov_kappa(l1, l2, l3) / 2, p);
}

std::complex<double> maslov_index_integral(const LagrangianLine& l1, const LagrangianLine& l2,
                                           const LagrangianLine& l3, long p) {
  std::complex<double> z = quadratic_line_integral(p, maslov_kappa(l1, l2, l3) / 2, Q(0));
  return z / std::abs(z);
}

bool maslov_relations_check(const std::array<LagrangianLine, 4>& lines, long p, double tol) {
  auto alpha = [&](int i, int j, int k) {
    return maslov_index(lines[i], lines[j], lines[k], p).c();
  };
  std::complex<double> a123 = alpha(0, 1, 2);
  if (std::abs(a123 - std::conj(alpha(0, 2, 1))) > tol) return false;
  if (std::abs(a123 - alpha(1, 2, 0)) > tol) return false;
  std::complex<double> cocycle = a123 * alpha(0, 2, 3) * alpha(1, 3, 2) * alpha(1, 0, 3);
  return std::abs(cocycle - 1.0) <= tol;
}

std::optional<std::string> maslov_normalization_note(long p) {
  if (p != 2) return std::nullopt;
  return "value normalized by the Gauss factor modulus sqrt(2); a convention dividing by 2 "
         "instead would leave the unit circle";
}

}  // namespace padiq
