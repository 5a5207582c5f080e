#ifndef EMK_JSON_IO_HPP
#define EMK_JSON_IO_HPP

// JSON (de)serialization of the library's value types and the text
// mini-grammar for polynomial test functions, shared by the command-line
// tool and the integration tests.  Serialization uses order-preserving JSON
// objects so identical inputs render byte-identically.

#include <json.hpp>
#include <string>

#include "emk/germ.hpp"
#include "emk/hyperfrac.hpp"
#include "emk/mu.hpp"
#include "emk/polyhedra.hpp"

namespace emk {

using Json = nlohmann::ordered_json;

// Rationals travel as strings: "p/q", or "n" when the denominator is 1.
Json rational_json(const Rational& r);
// Accepts the string form or a plain JSON integer.
Rational rational_from_json(const Json& j);

Json qvec_json(const QVec& v);
Json zvec_json(const ZVec& v);
QVec qvec_from_json(const Json& j);
ZVec zvec_from_json(const Json& j);

// {"dim": d, "inequalities": [{"a": [ints], "b": "p/q"}]}  or
// {"dim": d, "vertices": [["p/q", ...]], "rays": [[ints]], "lines": [[ints]]}
Polyhedron polyhedron_from_json(const Json& j);
// Emits both descriptions (facets/equalities and vertices/rays/lines).
Json polyhedron_json(const Polyhedron& p);

// {"dim": d, "matrix": [["p/q", ...], ...]}; validated on load.
ScalarProduct scalar_product_from_json(const Json& j);

// Mini-grammar: terms like "3/2*x1^2*x2" joined by '+'/'-'; variables are
// x1..xd; the coefficient is optional; "one" (or a bare rational) denotes a
// constant.  Matches Polynomial::to_string output.
Polynomial parse_polynomial(const std::string& text, int dim);

Json polynomial_json(const Polynomial& p);
Json fraction_json(const HyperFraction& f);
Json germ_json(const MeromorphicGerm& g);
Json mu_json(const MuFunction& mu);

}  // namespace emk

#endif  // EMK_JSON_IO_HPP
