#ifndef EMK_ASYMPTOTICS_HPP
#define EMK_ASYMPTOTICS_HPP

// Large-dilation expansion of Riemann sums over rational polyhedra:
//   R_t(P, h) = t^{-l} sum_{x in tP ∩ Z^d} h(x/t) = sum_{k>=0} F_k(t) t^{-k},
// where each F_k pairs h with per-face constant-coefficient differential
// operators whose symbols are mu components of the transverse cones.  On
// lattice polyhedra with integer t the coefficients are constants and the
// expansion of a polynomial h terminates: it is an exact finite formula.

#include "emk/mu.hpp"
#include "emk/stepfn.hpp"

namespace emk {

enum class DilationClass { IntegerLattice, RationalT };

struct ExpansionTerm {
  int k = 0;           // this term multiplies t^{-k}
  int face_index = 0;  // into AsymptoticExpansion::faces
  int m = 0;           // homogeneous degree of the operator symbol
  // Operator symbol in ambient dual coordinates (depends only on directions
  // normal to the face for the chosen scalar product).  Fixed in
  // integer-lattice mode; recomputed per t in rational-t mode (empty here).
  Polynomial op;
};

// Bounded-face geometry used for exact integration: lattice coordinates on
// the affine span and a triangulation of the face in those coordinates.
struct FaceGeometry {
  bool bounded = false;
  QVec base;              // ambient base point (first vertex)
  ZMat basis;             // rows: lattice basis of the direction space
  std::vector<QMat> simplices;  // each simplex: rows of coordinate points
};

struct AsymptoticExpansion {
  Polyhedron polyhedron;
  ScalarProduct q;
  int order = 0;  // K: terms kept for k <= K
  DilationClass t_class = DilationClass::IntegerLattice;
  std::vector<Face> faces;
  std::vector<TransverseCone> transversals;  // aligned with faces
  std::vector<FaceGeometry> geometry;        // aligned with faces
  std::vector<ExpansionTerm> terms;          // sorted by (k, face active set, m)
};

// Builds all terms with k <= order.  Integer-lattice mode requires a lattice
// polyhedron and caches each face's mu once; rational-t mode defers mu to
// evaluation time.  The k=0 term is the bare integral over the polyhedron.
AsymptoticExpansion expansion_terms(const Polyhedron& p, const ScalarProduct& q, int order,
                                    DilationClass t_class);

// mu of the dilated transverse cone (vertex scaled to t * vertex), pulled
// back to ambient dual coordinates.
MuFunction mu_at_dilation(const TransverseCone& tc, const Rational& t, const ScalarProduct& q,
                          int order);

// Exact integral of a polynomial over a bounded face with respect to the
// lattice measure of the face's direction space.
Rational face_integral(const Polyhedron& p, const Face& f, const Polynomial& g);

// Pulling triangulation of a bounded polytope, full-dimensional in its
// coordinate space, from its vertex rows; each simplex is vertex rows again.
std::vector<QMat> triangulate_polytope(const QMat& points);

// Coefficients F_0..F_order.  The plain form requires integer-lattice mode;
// the _at form evaluates rational-t coefficients at a given dilation.
std::vector<Rational> expansion_coefficients(const AsymptoticExpansion& e, const Polynomial& h);
std::vector<Rational> expansion_coefficients_at(const AsymptoticExpansion& e, const Polynomial& h,
                                                const Rational& t);

// sum_{k <= order} F_k(t) t^{-k} at a rational t > 0.
Rational evaluate_expansion(const AsymptoticExpansion& e, const Polynomial& h, const Rational& t);

struct RiemannSumResult {
  Rational t;
  Rational value;
  long long point_count = 0;
};

// Brute-force oracle: exact enumeration of tP ∩ Z^d (P bounded).
RiemannSumResult riemann_sum_oracle(const Polyhedron& p, const Polynomial& h, const Rational& t);

// Lattice-point counting polynomial of a bounded lattice polyhedron:
// #(tP ∩ Z^d) = sum_k coeff[k] t^{l-k} for integer t >= 1 (leading term
// first: coeff[k] is the h=1 expansion coefficient F_k).
std::vector<Rational> ehrhart_polynomial(const Polyhedron& p, const ScalarProduct& q);

// One-dimensional Euler-Maclaurin over the window [s, upper] with the exact
// Bernoulli-kernel remainder: expansion + remainder == riemann_sum, where
//   riemann_sum = t^{-1} sum_{x in t[s,upper] ∩ Z} h(x/t).
struct Dim1EulerMaclaurin {
  Rational expansion;
  Rational remainder;
  Rational riemann_sum;
};

Dim1EulerMaclaurin dim1_euler_maclaurin(const Rational& s, const Rational& upper,
                                        const Polynomial& h, const Rational& t, int n);

// Symbolic coefficient c(t) of the degree-m mu component of the dilated
// one-dimensional affine cone t(s + R_{>=0} * direction), direction = +-1:
// mu_[m](xi) = c(t) xi^m with c a step polynomial in t.
StepPoly dim1_mu_symbolic(const Rational& s, int direction, int m);

}  // namespace emk

#endif  // EMK_ASYMPTOTICS_HPP
