// Acceptance gate: runs every verification suite with its pinned tolerance
// and time budget, prints exactly one PASS/FAIL line per criterion, and
// exits nonzero when anything fails.

#include <cstdio>
#include <string>
#include <vector>

#include "padiq/verify.hpp"

namespace {

struct SuitePin {
  const char* suite;
  double tol;  // 0: every comparison in the suite is exact
};

struct Criterion {
  const char* what;
  std::vector<SuitePin> pins;
  long cap_ms;
};

const std::vector<Criterion> criteria = {
    {"hilbert symbol pinned values and identities", {{"hilbert-identities", 0.0}}, 5000},
    {"gauss integrals against the quadrature oracle", {{"gauss-vs-oracle", 1e-9}}, 60000},
    {"gauss factor modulus and case rows", {{"lambda-consistency", 1e-9}}, 30000},
    {"triple index under all permutations", {{"mu-permutations", 0.0}}, 30000},
    {"index trivial on arithmetic and all-isotropic quadruples",
     {{"mu-arithmetic-quadruples", 0.0}, {"mu-isotropic-quadruples", 0.0}},
     60000},
    {"iwasawa, gl2 and parabolic decompositions round trip", {{"decompositions", 0.0}}, 60000},
    {"lattice duality, level and divisor invariants", {{"lattice-invariants", 0.0}}, 30000},
    {"representation composes through the group cocycle", {{"weyl-relation", 0.0}}, 30000},
    {"operator kernel vs direct application, composition constant",
     {{"weyl-kernel-vs-apply", 1e-9}, {"weyl-compose-constant", 1e-6}},
     120000},
    {"line-triple index: closed form, quadrature, cocycle",
     {{"maslov-integral", 1e-9}, {"maslov-cocycle", 1e-9}},
     60000},
    {"normalization constant", {{"constant-c", 0.0}}, 1000},
};

}  // namespace

int main() {
  int failed = 0;
  int id = 0;
  for (const Criterion& cr : criteria) {
    ++id;
    long cases = 0, elapsed = 0;
    bool ok = true;
    double worst = 0.0;
    std::vector<padiq::VerifyFailure> details;
    for (const SuitePin& pin : cr.pins) {
      padiq::Report rep = padiq::run_suite(pin.suite, padiq::VerifyOptions{});
      cases += rep.cases;
      elapsed += rep.elapsed_ms;
      if (rep.max_abs_error > worst) worst = rep.max_abs_error;
      bool suite_ok = rep.passed();
      if (pin.tol > 0.0)
        suite_ok = suite_ok && rep.max_abs_error < pin.tol;
      else
        suite_ok = suite_ok && rep.max_abs_error == 0.0;
      if (!suite_ok) {
        ok = false;
        for (const auto& f : rep.failures)
          if (details.size() < 3) details.push_back(f);
      }
    }
    bool in_time = elapsed <= cr.cap_ms;
    ok = ok && in_time;
    double tol = 0.0;
    for (const SuitePin& pin : cr.pins) tol = pin.tol > tol ? pin.tol : tol;
    char tolbuf[32];
    if (tol > 0.0)
      std::snprintf(tolbuf, sizeof tolbuf, "%.0e", tol);
    else
      std::snprintf(tolbuf, sizeof tolbuf, "exact");
    std::printf("%s  %2d. %-58s cases=%-6ld max_err=%.2e tol=%-5s %ld/%ld ms\n",
                ok ? "PASS" : "FAIL", id, cr.what, cases, worst, tolbuf, elapsed, cr.cap_ms);
    if (!ok) {
      ++failed;
      if (!in_time) std::printf("      over time budget\n");
      for (const auto& f : details)
        std::printf("      %s: expected %s, got %s\n", f.input.c_str(), f.expected.c_str(),
                    f.got.c_str());
    }
  }
  if (failed) std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
