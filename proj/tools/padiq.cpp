// padiq: exact p-adic computations with JSON output.
//
// Exit codes: 0 success, 1 domain error ({"error": ...}), 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "padiq/characters.hpp"
#include "padiq/jsonio.hpp"
#include "padiq/lagrangian.hpp"
#include "padiq/lattice.hpp"
#include "padiq/maslov.hpp"
#include "padiq/oracle.hpp"
#include "padiq/prime.hpp"
#include "padiq/quadform.hpp"
#include "padiq/symplectic.hpp"
#include "padiq/testfunction.hpp"
#include "padiq/verify.hpp"
#include "padiq/weyl.hpp"

namespace {

using namespace padiq;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_prime(long p) {
  if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
    throw std::domain_error("-p: not a prime: " + std::to_string(p));
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Q rat_arg(const std::string& flag, const std::string& tok) {
  try {
    return parse_rational(tok);
  } catch (const std::exception&) {
    throw std::domain_error(flag + ": malformed rational: " + tok);
  }
}

LagrangianLine line_arg(const std::string& flag, const std::string& tok) {
  if (tok == "*") return LagrangianLine::infinity();
  return LagrangianLine::param(rat_arg(flag, tok));
}

std::vector<LagrangianLine> lines_arg(const std::string& flag, const std::string& s,
                                      std::size_t want) {
  std::vector<std::string> toks = split_commas(s);
  if (want != 0 && toks.size() != want)
    throw std::domain_error(flag + ": expected " + std::to_string(want) + " lines, got " +
                            std::to_string(toks.size()));
  std::vector<LagrangianLine> lines;
  for (const std::string& t : toks) lines.push_back(line_arg(flag, t));
  return lines;
}

Json json_arg(const std::string& flag, const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw std::domain_error(flag + ": invalid JSON: " + std::string(e.what()));
  }
}

QMat matrix_arg(const std::string& flag, const std::string& text, std::size_t dim) {
  try {
    Json j = json_arg(flag, text);
    return dim == 0 ? square_matrix_from(j) : matrix_from(j, dim, dim);
  } catch (const std::exception& e) {
    std::string w = e.what();
    if (w.rfind(flag, 0) == 0) throw;
    throw std::domain_error(flag + ": " + w);
  }
}

TestFunction tf_arg(const std::string& flag, const std::string& text) {
  try {
    TestFunction f = testfunction_from(json_arg(flag, text));
    require_prime(f.p);
    return f;
  } catch (const std::exception& e) {
    std::string w = e.what();
    if (w.rfind(flag, 0) == 0) throw;
    throw std::domain_error(flag + ": " + w);
  }
}

std::string square_class_str(const SquareClass& c) {
  std::string s = std::to_string(c.unit_rep);
  if (c.parity) s += "*p";
  return s;
}

HeisenbergElt elt_arg(const std::string& flag, const std::string& text) {
  Json j = json_arg(flag, text);
  if (!j.is_object() || !j.contains("z"))
    throw std::domain_error(flag + ": expected {z: [...], phase?: \"num/den\"}");
  HeisenbergElt g;
  for (const Json& x : j["z"]) g.z.push_back(rational_from(x));
  if (j.contains("phase")) g.phase = Phase(rational_from(j["phase"]));
  return g;
}

Json elt_json(const HeisenbergElt& g) {
  Json out;
  Json z = Json::array();
  for (const Q& x : g.z) z.push_back(rational_json(x));
  out["z"] = std::move(z);
  out["phase"] = format_rational(g.phase.q);
  return out;
}

Json report_json(const Report& rep) {
  Json out;
  out["suite"] = rep.suite;
  out["cases"] = rep.cases;
  Json fails = Json::array();
  for (const VerifyFailure& f : rep.failures) {
    Json jf;
    jf["input"] = f.input;
    jf["expected"] = f.expected;
    jf["got"] = f.got;
    fails.push_back(std::move(jf));
  }
  out["failures"] = std::move(fails);
  out["max_abs_error"] = rep.max_abs_error;
  out["elapsed_ms"] = rep.elapsed_ms;
  return out;
}

std::array<Q, 4> tuple_arg(const std::string& flag, const std::string& s) {
  std::vector<std::string> toks = split_commas(s);
  if (toks.size() != 4)
    throw std::domain_error(flag + ": expected 4 comma-separated rationals");
  return {rat_arg(flag, toks[0]), rat_arg(flag, toks[1]), rat_arg(flag, toks[2]),
          rat_arg(flag, toks[3])};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations over the p-adic numbers"};
  app.require_subcommand(1);

  long p = 2;
  long n_opt = 1;
  long nu = 0;
  long cases = 0;
  int depth = 0;
  std::uint64_t seed = 0;
  std::string a_str, b_str = "0", xi_str, eta_str, lines_str, perm_str;
  std::string matrix_str, basis_str, t1_str, t2_str;
  std::string g1_str, g2_str, fn_str, f_str, g_str, symbol_str, point_str;
  std::string variant = "selfdual", kind, suite, transform_kind = "plain";
  std::string pos_a, pos_b;
  bool json_mode = true;
  app.add_flag("--json", json_mode, "JSON output (the only mode; accepted for compatibility)");

  Json result;

  auto* gauss = app.add_subcommand("gauss", "closed-form integral of chi(a x^2 + b x) over Q_p");
  gauss->add_option("-p", p)->required();
  gauss->add_option("-a", a_str)->required();
  gauss->add_option("-b", b_str);
  gauss->callback([&] {
    require_prime(p);
    result = complex_json(gauss_integral(rat_arg("-a", a_str), rat_arg("-b", b_str), p));
  });

  auto* shell = app.add_subcommand("shell", "integral of chi(xi t) over the shell |t| = p^nu");
  shell->add_option("-p", p)->required();
  shell->add_option("--xi", xi_str)->required();
  shell->add_option("--nu", nu)->required();
  shell->callback([&] {
    require_prime(p);
    result = complex_json(shell_integral(rat_arg("--xi", xi_str), nu, p));
  });

  auto* lambda = app.add_subcommand("lambda", "Gauss factor of the quadratic character table");
  lambda->add_option("-p", p)->required();
  lambda->add_option("-a", a_str)->required();
  lambda->callback([&] {
    require_prime(p);
    result = complex_json(lambda_factor(rat_arg("-a", a_str), p));
  });

  auto* cc = app.add_subcommand("constant-c", "normalization constant |4| lambda(1/4) lambda(-1/4)");
  cc->add_option("-p", p)->required();
  cc->callback([&] {
    require_prime(p);
    result = complex_json(constant_c(p));
  });

  auto* hilbert = app.add_subcommand("hilbert", "Hilbert symbol (a, b)_p");
  hilbert->add_option("-p", p)->required();
  hilbert->add_option("a", pos_a)->required();
  hilbert->add_option("b", pos_b)->required();
  hilbert->callback([&] {
    require_prime(p);
    Q a = rat_arg("a", pos_a), b = rat_arg("b", pos_b);
    result["value"] = hilbert_symbol(a, b, p);
  });

  auto* mu_cmd = app.add_subcommand("mu", "Hasse invariant of a Lagrangian line triple");
  mu_cmd->add_option("-p", p)->required();
  mu_cmd->add_option("--lines", lines_str)->required();
  mu_cmd->callback([&] {
    require_prime(p);
    auto lines = lines_arg("--lines", lines_str, 3);
    TripleInvariants inv = triple_invariants(line_subspace(lines[0]), line_subspace(lines[1]),
                                             line_subspace(lines[2]), p);
    result["value"] = inv.mu;
    result["disc_class"] = square_class_str(inv.disc);
  });

  auto* museq = app.add_subcommand("mu-seq", "product of mu over all line triples");
  museq->add_option("-p", p)->required();
  museq->add_option("--lines", lines_str)->required();
  museq->callback([&] {
    require_prime(p);
    auto lines = lines_arg("--lines", lines_str, 0);
    if (lines.size() < 3) throw std::domain_error("--lines: need at least 3 lines");
    std::vector<LagrangianSubspace> subs;
    for (const auto& l : lines) subs.push_back(line_subspace(l));
    result["value"] = mu_sequence(subs, p);
  });

  auto* muperm = app.add_subcommand("mu-perm", "predicted mu of a permuted triple");
  muperm->add_option("-p", p)->required();
  muperm->add_option("--lines", lines_str)->required();
  muperm->add_option("--perm", perm_str)->required();
  muperm->callback([&] {
    require_prime(p);
    auto lines = lines_arg("--lines", lines_str, 3);
    if (perm_str.size() != 3) throw std::domain_error("--perm: expected three digits like 231");
    std::array<int, 3> perm{};
    std::array<bool, 3> seen{};
    for (int i = 0; i < 3; ++i) {
      int d = perm_str[i] - '1';
      if (d < 0 || d > 2 || seen[d])
        throw std::domain_error("--perm: not a permutation of 123: " + perm_str);
      seen[d] = true;
      perm[i] = d;
    }
    LagrangianSubspace l1 = line_subspace(lines[0]);
    LagrangianSubspace l2 = line_subspace(lines[1]);
    LagrangianSubspace l3 = line_subspace(lines[2]);
    TripleInvariants inv = triple_invariants(l1, l2, l3, p);
    result["value"] = mu_permuted_predict(l1, l2, l3, perm, p);
    result["disc_class"] = square_class_str(inv.disc);
  });

  auto* symp = app.add_subcommand("symplectic", "symplectic matrix predicates");
  symp->require_subcommand(1);
  auto* symp_check = symp->add_subcommand("check", "test g^T J0 g = J0 exactly");
  symp_check->add_option("--matrix", matrix_str)->required();
  symp_check->callback([&] {
    QMat m = matrix_arg("--matrix", matrix_str, 0);
    if (m.rows % 2 != 0) throw std::domain_error("--matrix: dimension must be even");
    result["value"] = is_symplectic(m);
  });

  auto* iwa = app.add_subcommand("iwasawa", "torus * unipotent * compact factorization");
  iwa->add_option("-p", p)->required();
  iwa->add_option("--n", n_opt)->required()->check(CLI::IsMember({1, 2}));
  iwa->add_option("--variant", variant)->check(CLI::IsMember({"selfdual", "L1"}));
  iwa->add_option("--matrix", matrix_str)->required();
  iwa->callback([&] {
    require_prime(p);
    if (n_opt == 1) {
      QMat g = matrix_arg("--matrix", matrix_str, 2);
      IwasawaSL2 d = iwasawa_sl2(g, p);
      result["a"] = d.a;
      result["u"] = rational_json(d.u);
      result["h"] = matrix_json(d.h);
    } else {
      QMat g = matrix_arg("--matrix", matrix_str, 4);
      IwasawaVariant v = variant == "L1" ? IwasawaVariant::L1 : IwasawaVariant::self_dual;
      IwasawaSp4 d = iwasawa_sp4(g, p, v);
      result["a1"] = d.a1;
      result["a2"] = d.a2;
      result["u"] = rational_json(d.u);
      result["s"] = rational_json(d.s);
      result["r"] = rational_json(d.r);
      result["t"] = rational_json(d.t);
      result["torus"] = matrix_json(d.torus);
      result["n1"] = matrix_json(d.n1);
      result["n2"] = matrix_json(d.n2);
      result["k"] = matrix_json(d.k);
    }
  });

  auto* lattice = app.add_subcommand("lattice", "lattice calculus on basis matrices");
  lattice->require_subcommand(1);
  auto* lat_dual = lattice->add_subcommand("dual", "basis of the symplectic dual lattice");
  auto* lat_sd = lattice->add_subcommand("selfdual", "whether the lattice is self-dual");
  auto* lat_level = lattice->add_subcommand("level", "smallest l with p^l scaling self-dual");
  auto* lat_div = lattice->add_subcommand("divisors", "symplectic elementary divisor exponents");
  for (CLI::App* sub : {lat_dual, lat_sd, lat_level, lat_div}) {
    sub->add_option("--basis", basis_str)->required();
    if (sub != lat_dual) sub->add_option("-p", p)->required();
  }
  lat_dual->callback([&] { result["basis"] = matrix_json(dual_lattice(matrix_arg("--basis", basis_str, 0))); });
  lat_sd->callback([&] {
    require_prime(p);
    result["value"] = is_self_dual(matrix_arg("--basis", basis_str, 0), p);
  });
  lat_level->callback([&] {
    require_prime(p);
    result["value"] = lattice_level(matrix_arg("--basis", basis_str, 0), p);
  });
  lat_div->callback([&] {
    require_prime(p);
    Json v = Json::array();
    for (long d : symplectic_divisors(matrix_arg("--basis", basis_str, 0), p)) v.push_back(d);
    result["value"] = std::move(v);
  });

  auto* pe = app.add_subcommand("param-equiv", "coset equality of (u,s,r,t) parameter tuples");
  pe->add_option("--kind", kind)->required()->check(CLI::IsMember({"sd2", "l1"}));
  pe->add_option("-p", p)->required();
  pe->add_option("--t1", t1_str)->required();
  pe->add_option("--t2", t2_str)->required();
  pe->callback([&] {
    require_prime(p);
    ParamKind k = kind == "l1" ? ParamKind::L1_n2 : ParamKind::self_dual_n2;
    result["value"] = param_equiv(k, p, tuple_arg("--t1", t1_str), tuple_arg("--t2", t2_str));
  });

  auto* heis = app.add_subcommand("heisenberg", "Heisenberg group operations");
  heis->require_subcommand(1);
  auto* hmul = heis->add_subcommand("mul", "compose two group elements");
  hmul->add_option("-p", p)->required();
  hmul->add_option("--g1", g1_str)->required();
  hmul->add_option("--g2", g2_str)->required();
  hmul->callback([&] {
    require_prime(p);
    result = elt_json(h_mul(elt_arg("--g1", g1_str), elt_arg("--g2", g2_str), p));
  });
  auto* hweyl = heis->add_subcommand("weyl-check", "sweep the operator composition relation");
  hweyl->add_option("-p", p);
  hweyl->add_option("--cases", cases);
  hweyl->add_option("--seed", seed);
  hweyl->callback([&] {
    VerifyOptions opt;
    if (hweyl->count("-p")) {
      require_prime(p);
      opt.p = p;
    }
    opt.cases = cases;
    opt.seed = seed;
    result = report_json(run_suite("weyl-relation", opt));
  });

  auto* tf = app.add_subcommand("tf", "test function (atom sum) operations");
  tf->require_subcommand(1);
  auto* tfeval = tf->add_subcommand("eval", "value at a point");
  tfeval->add_option("--fn", fn_str)->required();
  tfeval->add_option("--point", point_str)->required();
  tfeval->callback([&] {
    TestFunction f = tf_arg("--fn", fn_str);
    std::vector<Q> pt;
    for (const std::string& t : split_commas(point_str)) pt.push_back(rat_arg("--point", t));
    if (pt.size() != f.n) throw std::domain_error("--point: expected " + std::to_string(f.n) +
                                                  " coordinates");
    result = complex_json(tf_eval(f, pt));
  });
  auto* tffour = tf->add_subcommand("fourier", "Fourier transform of an atom sum");
  tffour->add_option("--fn", fn_str)->required();
  tffour->add_option("--kind", transform_kind)
      ->check(CLI::IsMember({"plain", "inverse", "symplectic"}));
  tffour->callback([&] {
    TestFunction f = tf_arg("--fn", fn_str);
    TestFunction out = transform_kind == "inverse"      ? inverse_fourier(f)
                       : transform_kind == "symplectic" ? symplectic_fourier(f)
                                                        : fourier(f);
    result = testfunction_json(out);
  });
  auto* tfinner = tf->add_subcommand("inner", "L2 pairing of two atom sums");
  tfinner->add_option("--f", f_str)->required();
  tfinner->add_option("--g", g_str)->required();
  tfinner->callback([&] {
    result = complex_json(tf_inner(tf_arg("--f", f_str), tf_arg("--g", g_str)));
  });

  auto* weyl = app.add_subcommand("weyl", "Weyl operators and kernels (n = 1)");
  weyl->require_subcommand(1);
  auto* wkernel = weyl->add_subcommand("kernel", "kernel value K_f(xi, eta)");
  wkernel->add_option("--symbol", symbol_str)->required();
  wkernel->add_option("--xi", xi_str)->required();
  wkernel->add_option("--eta", eta_str)->required();
  wkernel->callback([&] {
    TestFunction f = tf_arg("--symbol", symbol_str);
    result = complex_json(weyl_kernel(f, rat_arg("--xi", xi_str), rat_arg("--eta", eta_str)));
  });
  auto* wapply = weyl->add_subcommand("apply", "W_f psi as an atom sum");
  wapply->add_option("--symbol", symbol_str)->required();
  wapply->add_option("--fn", fn_str)->required();
  wapply->callback([&] {
    result = testfunction_json(weyl_apply(tf_arg("--symbol", symbol_str), tf_arg("--fn", fn_str)));
  });
  auto* wcomp = weyl->add_subcommand("compose-check", "composed kernel vs convolution quadrature");
  wcomp->add_option("--f", f_str)->required();
  wcomp->add_option("--g", g_str)->required();
  wcomp->callback([&] {
    KernelComposeReport rep = kernel_compose(tf_arg("--f", f_str), tf_arg("--g", g_str));
    Json samples = Json::array();
    for (const KernelSample& s : rep.samples) {
      Json js;
      js["xi"] = rational_json(s.xi);
      js["eta"] = rational_json(s.eta);
      js["closed"] = complex_json(s.closed_form);
      js["quadrature"] = complex_json(s.quadrature);
      samples.push_back(std::move(js));
    }
    result["samples"] = std::move(samples);
    result["fitted_c"] = complex_json(rep.fitted_c);
    result["max_abs_deviation"] = rep.max_abs_deviation;
    result["indeterminate"] = rep.indeterminate;
  });

  auto* maslov = app.add_subcommand("maslov", "index of a Lagrangian line triple");
  maslov->add_option("-p", p)->required();
  maslov->add_option("--lines", lines_str)->required();
  maslov->callback([&] {
    require_prime(p);
    auto lines = lines_arg("--lines", lines_str, 3);
    result = complex_json(maslov_index(lines[0], lines[1], lines[2], p));
    if (auto note = maslov_normalization_note(p)) result["note"] = *note;
  });

  auto* cocycle = app.add_subcommand("maslov-cocycle", "relations for a line quadruple");
  cocycle->add_option("-p", p)->required();
  cocycle->add_option("--lines", lines_str)->required();
  cocycle->callback([&] {
    require_prime(p);
    auto lines = lines_arg("--lines", lines_str, 4);
    result["value"] =
        maslov_relations_check({lines[0], lines[1], lines[2], lines[3]}, p);
  });

  auto* verify = app.add_subcommand("verify", "run a property suite and report");
  verify->add_option("--suite", suite)->required();
  verify->add_option("-p", p);
  verify->add_option("--cases", cases);
  verify->add_option("--seed", seed);
  verify->add_option("--depth", depth);
  verify->callback([&] {
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
      std::string known;
      for (const std::string& s : names) known += (known.empty() ? "" : ", ") + s;
      throw usage_error("--suite: unknown suite: " + suite + " (known: " + known + ")");
    }
    VerifyOptions opt;
    if (verify->count("-p")) {
      require_prime(p);
      opt.p = p;
    }
    opt.cases = cases;
    opt.seed = seed;
    opt.depth = depth;
    result = report_json(run_suite(suite, opt));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    Json h;
    h["usage"] = app.help();
    std::cout << h.dump() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    Json err;
    err["error"] = e.what();
    std::cout << err.dump() << "\n";
    return 2;
  } catch (const usage_error& e) {
    Json err;
    err["error"] = e.what();
    std::cout << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = e.what();
    std::cout << err.dump() << "\n";
    return 1;
  }

  std::cout << result.dump() << "\n";
  return 0;
}
