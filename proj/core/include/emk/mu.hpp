#ifndef EMK_MU_HPP
#define EMK_MU_HPP

// Renormalized mu-function of a pointed affine cone, and the face-by-face
// local decomposition of its lattice-point generating function
//   S(a) = sum_{faces f}  mu(transverse cone at f) * I(s + cone of f).

#include "emk/genfun.hpp"

namespace emk {

struct MuFunction {
  int dim = 0;
  int order = -1;
  std::vector<Polynomial> components;  // components[m] homogeneous of degree m

  Polynomial sum() const;
};

// mu(a) = projection of e^{-<xi, s>} S(a) onto the pole-free summand of the
// renormalization decomposition for the scalar product q, degree by degree.
MuFunction mu_function(const AffineCone& a, const ScalarProduct& q, int order);

// mu of a cone living in a quotient lattice, pulled back to the ambient dual
// coordinates: mu~ is computed against the scalar product induced on the
// quotient, then evaluated at <xi, sigma_i> where sigma is the q-orthogonal
// section of the quotient projection.
MuFunction mu_function_embedded(const AffineCone& a, const QuotientLattice& lattice,
                                const ScalarProduct& ambient_q, int order);

struct FaceTerm {
  Face face;
  MuFunction mu;             // ambient-coordinate mu of the transverse cone
  MeromorphicGerm integral;  // I(s + cone of the face)
};

struct LocalExpansion {
  std::vector<FaceTerm> faces;
  MeromorphicGerm reconstruction;  // sum over faces of mu * I
  MeromorphicGerm direct;          // S(a)
};

// Decomposes S(a) over the faces of a = s + c; the two germs agree up to
// homogeneous degree `order`.
LocalExpansion local_euler_maclaurin(const AffineCone& a, const ScalarProduct& q, int order);

bool local_expansion_matches(const LocalExpansion& e);

}  // namespace emk

#endif  // EMK_MU_HPP
