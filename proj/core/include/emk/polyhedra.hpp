#ifndef EMK_POLYHEDRA_HPP
#define EMK_POLYHEDRA_HPP

// Rational polyhedra and cones: conversion between inequality and generator
// descriptions, the face lattice, supporting and transverse cones, quotient
// lattices, half-open simplicial and unimodular subdivisions, and
// fundamental-box lattice point enumeration.

#include <optional>
#include <vector>

#include "emk/linalg.hpp"
#include "emk/rational.hpp"

namespace emk {

// Polyhedral cone { sum lambda_i g_i + span(lines) : lambda_i >= 0 }.
// Generators are primitive, deduplicated, and sorted; lines are a canonical
// lattice basis of the lineality space.
struct Cone {
  int dim = 0;
  ZMat generators;
  ZMat lines;

  static Cone from_generators(int dim, const ZMat& generators, const ZMat& lines = {});
  int cone_dim() const;  // dimension of the linear span
  bool is_simplicial() const { return lines.empty() && cone_dim() == static_cast<int>(generators.size()); }
};

struct AffineCone {
  QVec vertex;
  Cone cone;
};

// Facet normals (<a,x> <= 0) and span equalities (<e,x> = 0) of a cone.
struct ConeHRep {
  ZMat facets;
  ZMat span_eqs;
};

ConeHRep cone_facets(const Cone& c);
bool cone_contains(const ConeHRep& h, const QVec& x);
bool cone_is_pointed(const Cone& c);

// Simplicial cone with a subset of its facets marked open; facet j is the one
// spanned by all generators except generators[j].
struct HalfOpenCone {
  Cone cone;
  std::vector<int> open_facets;  // sorted local generator indices
};

// Quotient of Z^d by the saturation of a subspace: y = proj * x maps Z^d onto
// Z^q exactly, and the kernel of proj is the subspace.
struct QuotientLattice {
  int ambient_dim = 0;
  int quotient_dim = 0;
  ZMat mod_basis;  // canonical basis of the saturated subspace lattice
  ZMat proj;       // rows: canonical basis of the annihilator lattice

  static QuotientLattice by_subspace(const ZMat& span_rows, int dim);
  QVec project(const QVec& x) const;
  ZVec project_z(const ZVec& x) const;
  // A rational preimage of y under proj.
  QVec lift(const QVec& y) const;
};

struct Face {
  std::vector<int> active;       // tight inequality rows, sorted
  std::vector<int> gen_indices;  // incident generators (vertex-points, then rays, then lines)
  int dim = 0;
  QVec affine_point;   // a representative vertex-point on the face
  ZMat span_basis;     // canonical basis of the lattice of the face's direction space
};

class Polyhedron {
 public:
  // Both constructors run a full double-description round trip, so every
  // polyhedron carries a canonical irredundant inequality description and a
  // canonical minimal generator description.  Throws Error when empty.
  static Polyhedron from_inequalities(int dim, const QMat& a, const QVec& b);
  // Inequalities <a_i, x> <= b_i plus equalities <e_j, x> = c_j.
  static Polyhedron from_constraints(int dim, const QMat& a, const QVec& b, const QMat& e,
                                     const QVec& c);
  static Polyhedron from_generators(int dim, const QMat& vertices, const ZMat& rays,
                                    const ZMat& lines);

  int dim() const { return dim_; }
  int poly_dim() const;  // dimension of the affine hull

  // Facet rows <a_i, x> <= b_i (primitive integer normals).
  const ZMat& ineq_normals() const { return ineq_a_; }
  const QVec& ineq_rhs() const { return ineq_b_; }
  // Affine hull equalities <e_i, x> = c_i.
  const ZMat& eq_normals() const { return eq_a_; }
  const QVec& eq_rhs() const { return eq_b_; }

  // Minimal-face representative points, recession rays, lineality basis.
  const QMat& vertex_points() const { return vertices_; }
  const ZMat& rays() const { return rays_; }
  const ZMat& lines() const { return lines_; }

  bool contains(const QVec& x) const;
  // Membership in the dilation t * P.
  bool contains_dilated(const QVec& x, const Rational& t) const;
  bool is_bounded() const { return rays_.empty() && lines_.empty(); }
  bool is_pointed() const { return lines_.empty(); }
  // True when every minimal face's affine span contains a lattice point.
  bool is_lattice() const;

  Polyhedron() = default;

 private:
  int dim_ = 0;
  ZMat ineq_a_;
  QVec ineq_b_;
  ZMat eq_a_;
  QVec eq_b_;
  QMat vertices_;
  ZMat rays_;
  ZMat lines_;
};

// All nonempty faces (including the polyhedron itself), sorted by dimension
// and then by active set.
std::vector<Face> face_lattice(const Polyhedron& p);

// Cone of feasible directions at a face, based at a representative point.
AffineCone supporting_cone(const Polyhedron& p, const Face& f);

struct TransverseCone {
  QuotientLattice lattice;
  QVec vertex;  // projected representative point
  Cone cone;    // pointed image of the supporting cone
};

TransverseCone transverse_cone(const Polyhedron& p, const Face& f);

// Quotient by the lineality space, together with the projected polyhedron.
std::pair<QuotientLattice, Polyhedron> lineality_and_project(const Polyhedron& p);

// Exact half-open tilings of a pointed cone by simplicial (respectively
// unimodular) subcones spanned by the cone's own edge generators
// (respectively by lattice vectors of its span).
std::vector<HalfOpenCone> simplicial_subdivision(const Cone& c);
std::vector<HalfOpenCone> unimodular_subdivision(const Cone& c);  // requires simplicial input
// Composition of the two, marked in one pass (used for generating functions).
std::vector<HalfOpenCone> unimodular_tiling(const Cone& c);

// Lattice points of { vertex + sum alpha_j gen_j } with alpha_j in [0,1),
// or (0,1] for marked indices.  Generators must be linearly independent.
std::vector<ZVec> box_points(const QVec& vertex, const ZMat& gens,
                             const std::vector<int>& open_marks);

// Generator description of { x : ineq_i x <= 0, eq_j x = 0 }.
struct GeneratorSet {
  ZMat rays;
  ZMat lines;
};

GeneratorSet enumerate_generators(int dim, const QMat& ineqs, const QMat& eqs);

}  // namespace emk

#endif  // EMK_POLYHEDRA_HPP
