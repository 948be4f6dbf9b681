#pragma once

#include <json.hpp>

#include "padiq/matrix.hpp"
#include "padiq/phase.hpp"
#include "padiq/testfunction.hpp"

namespace padiq {

// ordered_json keeps insertion order, so identical inputs serialize
// byte-identically.
using Json = nlohmann::ordered_json;

Json rational_json(const Q& q);
Q rational_from(const Json& j);  // "num/den" string, integer, or exact double

// Matrices travel as flat row-major arrays of rational strings.
Json matrix_json(const QMat& m);
QMat matrix_from(const Json& j, std::size_t rows, std::size_t cols);
QMat square_matrix_from(const Json& j);  // dimension inferred from the length

// {re, im} plus exact polar data when available.
Json complex_json(const ComplexVal& v);
Json complex_json(std::complex<double> z);

Json testfunction_json(const TestFunction& f);
TestFunction testfunction_from(const Json& j);

}  // namespace padiq
