#include <doctest.h>

#include <stdexcept>

#include "padiq/jsonio.hpp"

using namespace padiq;

TEST_CASE("rational round trips") {
  CHECK(rational_json(q_of(3, 7)).get<std::string>() == "3/7");
  CHECK(rational_json(Q(-4)).get<std::string>() == "-4");
  CHECK(rational_from(Json("3/7")) == q_of(3, 7));
  CHECK(rational_from(Json("-12/8")) == q_of(-3, 2));
  CHECK(rational_from(Json(5)) == Q(5));
  CHECK(rational_from(Json(0.25)) == q_of(1, 4));  // binary doubles are exact
  CHECK_THROWS_AS(rational_from(Json(true)), std::domain_error);
  CHECK_THROWS_AS(rational_from(Json("3/")), std::invalid_argument);
}

TEST_CASE("matrices travel as flat row-major arrays") {
  QMat m(2, 3);
  long v = 1;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = Q(v++);
  Json j = matrix_json(m);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 6);
  CHECK(j[0].get<std::string>() == "1");
  CHECK(j[2].get<std::string>() == "3");  // end of row one
  CHECK(j[3].get<std::string>() == "4");  // start of row two
  CHECK(matrix_from(j, 2, 3) == m);
  CHECK_THROWS_AS(matrix_from(j, 3, 3), std::domain_error);
}

TEST_CASE("square matrices infer their dimension") {
  Json j = Json::array({"1", "1/2", "0", "1"});
  QMat m = square_matrix_from(j);
  REQUIRE(m.rows == 2);
  REQUIRE(m.cols == 2);
  CHECK(m.at(0, 1) == q_of(1, 2));
  CHECK(square_matrix_from(matrix_json(QMat::J0(2))) == QMat::J0(2));

  CHECK_THROWS_AS(square_matrix_from(Json::array({"1", "2", "3"})), std::domain_error);
  CHECK_THROWS_AS(square_matrix_from(Json::array()), std::domain_error);
  CHECK_THROWS_AS(square_matrix_from(Json("17")), std::domain_error);
}

TEST_CASE("dumps are deterministic") {
  QMat m(2, 2);
  m.at(0, 0) = q_of(1, 3);
  m.at(0, 1) = Q(-2);
  m.at(1, 0) = Q(0);
  m.at(1, 1) = q_of(7, 2);
  Json j;
  j["matrix"] = matrix_json(m);
  j["det"] = rational_json(m.det());
  std::string once = j.dump();
  std::string twice = j.dump();
  CHECK(once == twice);
  // insertion order survives a parse cycle
  CHECK(Json::parse(once).dump() == once);
}

TEST_CASE("complex values carry exact polar tags when known") {
  ComplexVal ex = ComplexVal::exact(Phase(q_of(1, 4)), Q(2));
  Json je = complex_json(ex);
  CHECK(je["exact_phase"].get<std::string>() == "1/4");
  CHECK(je["exact_modulus_sq"].get<std::string>() == "2");
  CHECK(je["re"].get<double>() == doctest::Approx(0.0));

  Json ja = complex_json(std::complex<double>(0.5, -0.5));
  CHECK(!ja.contains("exact_phase"));
  CHECK(ja["im"].get<double>() == doctest::Approx(-0.5));
}

TEST_CASE("test functions round trip") {
  TestFunction f{3, 2, {}};
  Atom a;
  a.coeff = PhaseSum::complex_rational(q_of(3, 4), q_of(-1, 2));
  a.center = {Q(1), q_of(1, 3)};
  a.scale = {0, -1};
  a.modulation = {Q(0), Q(3)};
  f.atoms.push_back(a);
  Atom b = a;
  b.coeff = PhaseSum::of(Phase(q_of(1, 4)), Q(2));  // value 2i, exact in doubles
  b.center = {Q(0), Q(0)};
  f.atoms.push_back(b);

  TestFunction back = testfunction_from(testfunction_json(f));
  CHECK(back.p == f.p);
  CHECK(back.n == f.n);
  CHECK(tf_equal(back, f));

  CHECK_THROWS_AS(testfunction_from(Json::object({{"p", 3}})), std::domain_error);
  Json bad = testfunction_json(f);
  bad["atoms"][0]["center"] = Json::array({"1"});  // wrong arity
  CHECK_THROWS_AS(testfunction_from(bad), std::domain_error);
}
