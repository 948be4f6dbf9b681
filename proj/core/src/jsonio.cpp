#include "padiq/jsonio.hpp"

#include <stdexcept>

namespace padiq {

Json rational_json(const Q& q) { return format_rational(q); }

Q rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return q_of(j.get<long>());
  if (j.is_number_float()) {
    // binary doubles convert exactly
    Q q(j.get<double>());
    q.canonicalize();
    return q;
  }
  throw std::domain_error("expected a rational: \"num/den\" string or number");
}

Json matrix_json(const QMat& m) {
  Json flat = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) flat.push_back(rational_json(m.at(i, j)));
  return flat;
}

QMat matrix_from(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows * cols)
    throw std::domain_error("expected a flat row-major array of " +
                            std::to_string(rows * cols) + " rationals");
  QMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) m.at(i, k) = rational_from(j[i * cols + k]);
  return m;
}

QMat square_matrix_from(const Json& j) {
  if (!j.is_array()) throw std::domain_error("expected a flat row-major array of rationals");
  std::size_t dim = 0;
  while (dim * dim < j.size()) ++dim;
  if (dim * dim != j.size() || dim == 0)
    throw std::domain_error("array length is not a perfect square");
  return matrix_from(j, dim, dim);
}

Json complex_json(std::complex<double> z) {
  Json out;
  out["re"] = z.real();
  out["im"] = z.imag();
  return out;
}

Json complex_json(const ComplexVal& v) {
  Json out = complex_json(v.c());
  if (v.exact_phase) out["exact_phase"] = format_rational(v.exact_phase->q);
  if (v.exact_mod_sq) out["exact_modulus_sq"] = format_rational(*v.exact_mod_sq);
  return out;
}

Json testfunction_json(const TestFunction& f) {
  Json out;
  out["n"] = f.n;
  out["p"] = f.p;
  Json atoms = Json::array();
  for (const Atom& a : f.atoms) {
    Json ja;
    ja["coeff"] = complex_json(a.coeff.value());
    Json center = Json::array(), scale = Json::array(), modulation = Json::array();
    for (std::size_t i = 0; i < a.center.size(); ++i) {
      center.push_back(rational_json(a.center[i]));
      scale.push_back(a.scale[i]);
      modulation.push_back(rational_json(a.modulation[i]));
    }
    ja["center"] = std::move(center);
    ja["scale"] = std::move(scale);
    ja["modulation"] = std::move(modulation);
    atoms.push_back(std::move(ja));
  }
  out["atoms"] = std::move(atoms);
  return out;
}

TestFunction testfunction_from(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("p") || !j.contains("atoms"))
    throw std::domain_error("expected a test function: {n, p, atoms}");
  TestFunction f;
  f.n = j["n"].get<std::size_t>();
  f.p = j["p"].get<long>();
  for (const Json& ja : j["atoms"]) {
    Atom a;
    if (ja.contains("coeff")) {
      const Json& c = ja["coeff"];
      Q re = c.contains("re") ? rational_from(c["re"]) : Q(0);
      Q im = c.contains("im") ? rational_from(c["im"]) : Q(0);
      a.coeff = PhaseSum::complex_rational(re, im);
    } else {
      a.coeff = PhaseSum::one();
    }
    for (const Json& x : ja["center"]) a.center.push_back(rational_from(x));
    for (const Json& x : ja["scale"]) a.scale.push_back(x.get<long>());
    for (const Json& x : ja["modulation"]) a.modulation.push_back(rational_from(x));
    if (a.center.size() != f.n || a.scale.size() != f.n || a.modulation.size() != f.n)
      throw std::domain_error("atom arrays must have length n");
    f.atoms.push_back(std::move(a));
  }
  return f;
}

}  // namespace padiq
