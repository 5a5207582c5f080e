#ifndef EMK_BERNOULLI_HPP
#define EMK_BERNOULLI_HPP

// Bernoulli numbers and polynomials under the B_1 = -1/2 convention,
// generated by the recursion B_n(s) = s^n - (1/(n+1)) sum_{m<n} C(n+1,m) B_m(s)
// and cached process-wide.

#include "emk/polynomial.hpp"
#include "emk/rational.hpp"

namespace emk {

struct BernoulliData {
  Rational number;        // B_n(0)
  Polynomial polynomial;  // B_n(s), a univariate polynomial
};

// Thread-safe cached lookup of (B_n(0), B_n(s)).
const BernoulliData& bernoulli(int n);

}  // namespace emk

#endif  // EMK_BERNOULLI_HPP
