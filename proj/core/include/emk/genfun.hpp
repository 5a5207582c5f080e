#ifndef EMK_GENFUN_HPP
#define EMK_GENFUN_HPP

// Generating functions of pointed affine cones as meromorphic germs:
// the lattice-point sum  S(a)(xi) = sum_{x in a ∩ Z^d} e^{<xi,x>}
// and the analytically continued integral  I(a)(xi) = int_a e^{<xi,x>} dm_a
// with respect to the lattice measure of the cone's direction space.

#include "emk/germ.hpp"
#include "emk/polyhedra.hpp"

namespace emk {

// Germ of S(a), valid for homogeneous degrees up to `order`.  Computed by a
// half-open unimodular tiling: each piece contributes the exponential of its
// fundamental-box lattice point times prod_j 1/(1 - e^{<v_j, xi>}).
MeromorphicGerm lattice_gen_function(const AffineCone& a, int order);

// Germ of I(a): each simplicial piece with edge generators v_1..v_l
// contributes (-1)^l |det_Lambda(v)| e^{<xi,s>} / prod_j <v_j, xi>.
MeromorphicGerm integral_gen_function(const AffineCone& a, int order);

// The affine cone projected along one of its edges, in the canonical quotient
// lattice coordinates (the same coordinates quotient_residue produces).
AffineCone project_along_edge(const AffineCone& a, const ZVec& edge,
                              QuotientLattice* lattice_out = nullptr);

// Residue laws: the partial residue of the generating function along an edge
// equals minus the generating function of the projected cone.
bool lattice_residue_law(const AffineCone& a, const ZVec& edge, int order);
bool integral_residue_law(const AffineCone& a, const ZVec& edge, int order);

}  // namespace emk

#endif  // EMK_GENFUN_HPP
