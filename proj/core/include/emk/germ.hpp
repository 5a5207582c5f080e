#ifndef EMK_GERM_HPP
#define EMK_GERM_HPP

// Truncated germs of meromorphic functions of the form
//   (g_0 + g_1 + ... + g_T) / prod_j <v_j, xi>^{n_j} + O(degree depth+1),
// where g_k is homogeneous of degree k and depth = T - sum n_j is the highest
// homogeneous degree the germ determines.  This is the working representation
// of lattice-point and volume generating functions of cones, of exponentials,
// and of their products.

#include <map>
#include <vector>

#include "emk/hyperfrac.hpp"
#include "emk/polynomial.hpp"
#include "emk/rational.hpp"

namespace emk {

class MeromorphicGerm {
 public:
  MeromorphicGerm() = default;
  // Zero germ with the given truncation.
  MeromorphicGerm(int dim, int numerator_truncation);

  static MeromorphicGerm from_polynomial(const Polynomial& p, int numerator_truncation);
  // e^{<xi, s>} truncated at total degree `numerator_truncation`.
  static MeromorphicGerm exponential(int dim, const QVec& s, int numerator_truncation);
  // 1/(1 - e^{<v, xi>}) = -(1/<v,xi>) * sum_k b_k <v,xi>^k / k!  with the
  // Bernoulli numbers b_k (b_1 = -1/2).
  static MeromorphicGerm one_over_one_minus_exp(int dim, const ZVec& v, int numerator_truncation);
  // 1/<v, xi>: a bare simple pole.
  static MeromorphicGerm one_over_linear(int dim, const ZVec& v, int numerator_truncation);

  int dim() const { return dim_; }
  const std::map<ZVec, int>& poles() const { return poles_; }
  int total_pole_multiplicity() const;
  int numerator_truncation() const { return trunc_; }
  // Highest homogeneous degree this germ determines.
  int depth() const { return trunc_ - total_pole_multiplicity(); }

  const std::vector<Polynomial>& numerator_parts() const { return parts_; }

  MeromorphicGerm operator+(const MeromorphicGerm& o) const;
  MeromorphicGerm operator-(const MeromorphicGerm& o) const;
  MeromorphicGerm operator*(const MeromorphicGerm& o) const;
  MeromorphicGerm scale(const Rational& c) const;
  MeromorphicGerm truncate(int new_truncation) const;

  bool is_zero() const;

  // Homogeneous component of degree m as a fraction (simplified).  Requires
  // -total_pole_multiplicity() <= m <= depth().
  HyperFraction homogeneous_component(int m) const;

  // Adds a numerator polynomial (split into homogeneous parts; degrees above
  // the truncation are discarded).
  void accumulate_numerator(const Polynomial& p);

 private:
  int dim_ = 0;
  int trunc_ = -1;
  std::map<ZVec, int> poles_;
  std::vector<Polynomial> parts_;  // parts_[k] homogeneous of degree k, size trunc_+1

  friend MeromorphicGerm quotient_residue(const MeromorphicGerm& g, const ZVec& v);
};

// Sum of the renormalizations of the homogeneous components of degrees
// 0..order: a polynomial whose degree-m part is the image of the degree-m
// component under the projection onto the pole-free summand.  Requires
// order <= g.depth().
Polynomial renormalize_germ(const MeromorphicGerm& g, const ScalarProduct& q, int order);

// Partial residue along a simple pole v, written in the quotient coordinates
// zeta with xi = W^T zeta, where the rows of W are the canonical basis of the
// quotient lattice Z^d / Z v.  Pole forms u become W u.
MeromorphicGerm quotient_residue(const MeromorphicGerm& g, const ZVec& v);

}  // namespace emk

#endif  // EMK_GERM_HPP
