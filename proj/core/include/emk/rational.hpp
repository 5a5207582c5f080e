#ifndef EMK_RATIONAL_HPP
#define EMK_RATIONAL_HPP

// Exact arithmetic foundation: arbitrary-precision integers and rationals,
// string round-tripping in "p/q" form, floor/ceil/fractional-part helpers,
// and small combinatorial tables (factorials, binomial coefficients).

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace emk {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using QVec = std::vector<Rational>;
using ZVec = std::vector<Int>;

// Library-wide error type: raised on malformed input, domain violations
// (e.g. requesting a generating function of a non-pointed cone), and
// internal consistency failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Renders n or p/q with no spaces; denominator omitted when it equals 1.
std::string rat_to_string(const Rational& r);

// Parses an optional sign, an integer numerator, and an optional /denominator.
// Throws Error on malformed text or a zero denominator.
Rational rat_from_string(const std::string& s);

Int rat_floor(const Rational& r);
Int rat_ceil(const Rational& r);

// Fractional part {r} = r - floor(r), always in [0, 1).
Rational frac_part(const Rational& r);

Rational rat_pow(const Rational& base, int exp);
double rat_to_double(const Rational& r);

Int factorial(int n);
Int binomial(int n, int k);

int sign_of(const Rational& r);

}  // namespace emk

#endif  // EMK_RATIONAL_HPP
