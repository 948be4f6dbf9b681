#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "padiq/testfunction.hpp"

namespace padiq {

// Kernel of the Weyl operator with symbol f on Q_p^2 (n = 1):
// K(xi, eta) = integral of f((xi+eta)/2, y) chi((eta-xi) y) dy, in closed
// form per atom.
PhaseSum weyl_kernel_sum(const TestFunction& f, const Q& xi, const Q& eta);
ComplexVal weyl_kernel(const TestFunction& f, const Q& xi, const Q& eta);

// W_f[psi](xi) = integral of K(xi, eta) psi(eta) d eta, as an exact
// TestFunction on Q_p. Each atom pair contributes at most one atom.
TestFunction weyl_apply(const TestFunction& f, const TestFunction& psi);

// K_{W_f W_g}(xi, eta) = integral of K_f(xi, z) K_g(z, eta) dz, closed form.
PhaseSum composed_kernel_sum(const TestFunction& f, const TestFunction& g, const Q& xi,
                             const Q& eta);
ComplexVal composed_kernel(const TestFunction& f, const TestFunction& g, const Q& xi,
                           const Q& eta);

struct KernelSample {
  Q xi, eta;
  std::complex<double> closed_form;  // composed kernel
  std::complex<double> quadrature;   // kernel of the twisted-convolution symbol, unscaled
};

struct KernelComposeReport {
  std::vector<KernelSample> samples;
  std::complex<double> fitted_c{0.0, 0.0};
  double max_abs_deviation = 0.0;  // max |closed_form - fitted_c * quadrature|
  bool indeterminate = false;      // kernel vanishes at every sample; no constant to fit
};

// Compares the composed kernel against the kernel of W_h, where h is the
// twisted convolution of f and g evaluated by certified flat quadrature,
// and fits the proportionality constant: 1 for odd p, 1/4 for p = 2.
KernelComposeReport kernel_compose(const TestFunction& f, const TestFunction& g,
                                   std::vector<std::pair<Q, Q>> sample_points = {});

}  // namespace padiq
