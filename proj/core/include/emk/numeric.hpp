#ifndef EMK_NUMERIC_HPP
#define EMK_NUMERIC_HPP

// Floating-point evaluation path for smooth, compactly supported test
// functions: expansion terms stay exact, while face integrals run through
// adaptive quadrature and Riemann sums through direct enumeration.

#include <functional>

#include "emk/asymptotics.hpp"

namespace emk {

struct SmoothFunction {
  int dim = 0;
  std::vector<double> box_lo, box_hi;  // support box: h vanishes outside
  // eval(x, alpha) = the partial derivative prescribed by multi-index alpha,
  // evaluated at x.  Must return 0 outside the support box.
  std::function<double(const std::vector<double>&, const std::vector<int>&)> eval;
};

// sum_{k <= K} t^{-k} sum_{terms at k} int_{f ∩ box} (op(d)h) dm_f with the
// face pieces clipped to the support box.  Faces of dimension <= 2 only.
double evaluate_expansion_numeric(const AsymptoticExpansion& e, const SmoothFunction& h,
                                  const Rational& t, double tol = 1e-10);

struct NumericRiemannSum {
  double value = 0;
  long long point_count = 0;
};

// t^{-l} sum h(x/t) over x in tP ∩ Z^d with x/t inside the support box.
NumericRiemannSum riemann_sum_numeric(const Polyhedron& p, const SmoothFunction& h,
                                      const Rational& t);

}  // namespace emk

#endif  // EMK_NUMERIC_HPP
