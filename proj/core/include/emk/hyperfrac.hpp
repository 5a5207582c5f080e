#ifndef EMK_HYPERFRAC_HPP
#define EMK_HYPERFRAC_HPP

// Rational functions with poles on a hyperplane arrangement
// P(xi) / prod_j <v_j, xi>^{n_j}, their partial residues, the direct-sum
// decomposition indexed by pole-spanned subspaces, and the renormalization
// map (projection onto the polynomial summand) with respect to a Euclidean
// scalar product.

#include <map>
#include <vector>

#include "emk/linalg.hpp"
#include "emk/polynomial.hpp"
#include "emk/rational.hpp"

namespace emk {

struct ScalarProduct {
  int dim = 0;
  QMat matrix;  // symmetric positive definite

  static ScalarProduct identity(int d);
  // Throws Error unless the matrix is symmetric with positive leading
  // principal minors.
  void validate() const;
  Rational pair(const QVec& a, const QVec& b) const;  // a^T M b
  QVec apply(const QVec& a) const;                    // M a
};

class HyperFraction {
 public:
  HyperFraction() = default;
  explicit HyperFraction(int dim) : dim_(dim), num_(dim) {}
  // Canonicalizes: each pole direction becomes a primitive integer vector
  // with positive first nonzero entry, scalars are absorbed into the
  // numerator, collinear poles merge, and common linear factors between the
  // numerator and the poles are cancelled.
  HyperFraction(int dim, Polynomial numerator,
                const std::vector<std::pair<QVec, int>>& poles);

  static HyperFraction from_polynomial(Polynomial p);

  int dim() const { return dim_; }
  const Polynomial& numerator() const { return num_; }
  const std::map<ZVec, int>& poles() const { return poles_; }
  int total_multiplicity() const;
  bool is_polynomial() const { return poles_.empty(); }
  bool is_zero() const { return num_.is_zero(); }

  // Denominator prod <v,xi>^mult as a polynomial.
  Polynomial denominator() const;

  HyperFraction operator+(const HyperFraction& o) const;
  HyperFraction operator-(const HyperFraction& o) const;
  HyperFraction operator-() const;
  HyperFraction operator*(const HyperFraction& o) const;
  HyperFraction scale(const Rational& c) const;
  HyperFraction mul_poly(const Polynomial& p) const;

  // Exact value at a point off the pole hyperplanes (throws on a pole).
  Rational eval(const QVec& x) const;

  // Equality as rational functions (difference has zero numerator).
  bool equals(const HyperFraction& o) const;

 private:
  void cancel_common_factors();

  int dim_ = 0;
  std::map<ZVec, int> poles_;
  Polynomial num_;
};

// One summand of the subspace decomposition: lives at the subspace L spanned
// by its pole directions.  `parts` are fractions whose poles lie in L and
// span L, and whose numerators are invariant under xi -> xi + Q l for l in L
// (i.e. they belong to the symmetric algebra of the Q-orthogonal complement
// of L).  `term()` collapses the parts over a common denominator — the
// collapsed numerator need not retain the invariance, which is why the parts
// are kept.
struct SubspaceComponent {
  ZMat subspace;  // canonical Hermite basis of the saturated lattice of L; empty for L = {0}
  std::vector<HyperFraction> parts;

  HyperFraction term() const;
  int subspace_dim() const { return static_cast<int>(subspace.size()); }
};

// Partial residue along a simple pole v: (v * f) restricted to the
// annihilator of v.  The restriction is parametrized as xi = sum_i zeta_i w_i
// where w_1..w_{d-1} is the canonical (Hermite) basis of the lattice of
// integer points orthogonal to v, so the result is a fraction in zeta.
// Errors when v is not a pole or has multiplicity > 1.
HyperFraction residue(const HyperFraction& f, const QVec& v);

// Decomposition for a fraction with multiplicity-one, linearly independent
// pole directions, via the recursive restriction formula.  Components are
// indexed by the subsets of the pole set.
std::vector<SubspaceComponent> decompose_simple_poles(const HyperFraction& f,
                                                      const ScalarProduct& q);

// Full decomposition of an arbitrary fraction: rewrites to independent-pole
// fractions, splits off the orthogonal-numerator part in adapted coordinates,
// recurses, and merges the emitted pieces by subspace.  The components sum to
// the input exactly; the L = {0} component is the polynomial part.
std::vector<SubspaceComponent> decompose_general(const HyperFraction& f,
                                                 const ScalarProduct& q);

// The L = {0} component of decompose_general.
Polynomial renormalize(const HyperFraction& f, const ScalarProduct& q);

}  // namespace emk

#endif  // EMK_HYPERFRAC_HPP
