#ifndef EMK_LINALG_HPP
#define EMK_LINALG_HPP

// Exact linear algebra over the rationals and over the integer lattice:
// Gaussian elimination (rank / determinant / solve / inverse / kernel),
// Hermite normal forms, integer kernels, lattice saturation, and
// divisibility-checked integer solving.  Everything is deterministic.

#include <optional>
#include <vector>

#include "emk/rational.hpp"

namespace emk {

using QMat = std::vector<QVec>;  // row-major
using ZMat = std::vector<ZVec>;  // row-major

// ---- conversions & elementary operations ----------------------------------

QMat qmat_identity(int n);
ZMat to_zmat_identity(int n);
QMat to_qmat(const ZMat& a);
QVec to_qvec(const ZVec& v);
QMat transpose(const QMat& a);
ZMat transpose_z(const ZMat& a);

QMat mat_mul(const QMat& a, const QMat& b);
QVec mat_vec(const QMat& a, const QVec& x);
ZVec mat_vec_z(const ZMat& a, const ZVec& x);

Rational dot(const QVec& a, const QVec& b);
Rational dot_zq(const ZVec& a, const QVec& b);
Int dot_z(const ZVec& a, const ZVec& b);

QVec qvec_add(const QVec& a, const QVec& b);
QVec qvec_sub(const QVec& a, const QVec& b);
QVec qvec_scale(const Rational& c, const QVec& a);
bool qvec_is_zero(const QVec& a);
bool zvec_is_zero(const ZVec& a);

// ---- rational Gaussian elimination -----------------------------------------

int rank(const QMat& a);
Rational det(const QMat& a);

// Any solution of a x = b, or nullopt when inconsistent (free variables 0).
std::optional<QVec> solve(const QMat& a, const QVec& b);

// Inverse of a square nonsingular matrix; throws Error when singular.
QMat inverse(const QMat& a);

// Basis (as rows) of the rational null space of a.
QMat kernel_basis(const QMat& a);

// ---- integer lattice tools --------------------------------------------------

Int floor_div(const Int& a, const Int& b);
Int gcd_vec(const ZVec& v);

// Divides by the gcd of the entries (no-op on the zero vector); returns the
// gcd (0 for the zero vector).
Int make_primitive(ZVec& v);

// Primitive vector with positive first nonzero entry, plus the rational
// multiplier c such that the input equals c * result.  Input is rational;
// the zero vector is rejected.
std::pair<ZVec, Rational> canonical_direction(const QVec& v);
std::pair<ZVec, Rational> canonical_direction_z(const ZVec& v);

struct ColumnHNF {
  ZMat h;                       // a * u = h; pivot columns first, zero columns last
  ZMat u;                       // unimodular
  int rank = 0;                 // number of pivot columns
  std::vector<int> pivot_rows;  // strictly increasing, one per pivot column
};

// Column-style Hermite normal form: pivots positive, entries left of a pivot
// in its row reduced into [0, pivot).
ColumnHNF hnf_columns(const ZMat& a);

// Canonical row-style Hermite normal form of the lattice spanned by the rows;
// zero rows are dropped.  Unique per lattice, hence usable as a map key.
ZMat hnf_rows(const ZMat& a);

// Z-basis (as rows) of { x in Z^n : a x = 0 }, canonicalized via hnf_rows.
// The kernel of an integer matrix is automatically saturated.
ZMat integer_kernel(const ZMat& a);

// Same, for a rational constraint matrix (rows are scaled to integers first).
ZMat integer_kernel_q(const QMat& a);

// Canonical basis of the saturation sat(L) = span_Q(rows) ∩ Z^dim.
ZMat saturate_span(const ZMat& rows, int dim);

// Any integer solution of a x = b, or nullopt (checks divisibility via HNF).
std::optional<ZVec> solve_integer(const ZMat& a, const ZVec& b);

// Index [Z^n : column lattice] = |det| of a square integer matrix.
Int lattice_index(const ZMat& a);

// Clears denominators row by row; each row is multiplied by a positive
// integer, so kernels and row spans are preserved.
ZMat scale_rows_to_int(const QMat& a);

bool zmat_equal(const ZMat& a, const ZMat& b);

}  // namespace emk

#endif  // EMK_LINALG_HPP
