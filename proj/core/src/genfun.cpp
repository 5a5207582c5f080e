#include "emk/genfun.hpp"

namespace emk {

MeromorphicGerm lattice_gen_function(const AffineCone& a, int order) {
  const Cone& c = a.cone;
  if (order < 0) throw Error("lattice_gen_function: negative order");
  if (!c.lines.empty()) throw Error("lattice_gen_function: cone is not pointed");
  int d = c.dim;
  MeromorphicGerm total(d, order);
  for (const HalfOpenCone& piece : unimodular_tiling(c)) {
    std::vector<ZVec> box = box_points(a.vertex, piece.cone.generators, piece.open_facets);
    if (box.empty()) continue;
    int t = order + static_cast<int>(piece.cone.generators.size());
    MeromorphicGerm g(d, t);
    for (const ZVec& x : box) g = g + MeromorphicGerm::exponential(d, to_qvec(x), t);
    for (const ZVec& v : piece.cone.generators)
      g = g * MeromorphicGerm::one_over_one_minus_exp(d, v, t);
    total = total + g;
  }
  return total;
}

MeromorphicGerm integral_gen_function(const AffineCone& a, int order) {
  const Cone& c = a.cone;
  if (order < 0) throw Error("integral_gen_function: negative order");
  if (!c.lines.empty()) throw Error("integral_gen_function: cone is not pointed");
  int d = c.dim;
  int l = c.cone_dim();
  if (l == 0) return MeromorphicGerm::exponential(d, a.vertex, order);
  // Volumes are measured against the lattice of the cone's linear span.
  ZMat basis = saturate_span(c.generators, d);
  QMat basis_cols = transpose(to_qmat(basis));
  Rational sign = (l % 2 == 0) ? Rational(1) : Rational(-1);
  MeromorphicGerm total(d, order);
  for (const HalfOpenCone& piece : simplicial_subdivision(c)) {
    QMat coords;
    for (const ZVec& v : piece.cone.generators) {
      auto x = solve(basis_cols, to_qvec(v));
      if (!x) throw Error("integral_gen_function: generator outside the cone span");
      coords.push_back(*x);
    }
    Rational vol = det(coords);
    if (vol < 0) vol = -vol;
    int t = order + l;
    MeromorphicGerm g = MeromorphicGerm::exponential(d, a.vertex, t).scale(sign * vol);
    for (const ZVec& v : piece.cone.generators)
      g = g * MeromorphicGerm::one_over_linear(d, v, t);
    total = total + g;
  }
  return total;
}

AffineCone project_along_edge(const AffineCone& a, const ZVec& edge,
                              QuotientLattice* lattice_out) {
  int d = a.cone.dim;
  QuotientLattice ql = QuotientLattice::by_subspace(ZMat{edge}, d);
  ZMat gens;
  for (const ZVec& v : a.cone.generators) {
    ZVec img = ql.project_z(v);
    if (!zvec_is_zero(img)) gens.push_back(img);
  }
  AffineCone out{ql.project(a.vertex), Cone::from_generators(ql.quotient_dim, gens, {})};
  if (lattice_out != nullptr) *lattice_out = ql;
  return out;
}

namespace {

bool residue_law_impl(const AffineCone& a, const ZVec& edge, int order, bool lattice_sum) {
  AffineCone projected = project_along_edge(a, edge);
  MeromorphicGerm whole = lattice_sum ? lattice_gen_function(a, order)
                                      : integral_gen_function(a, order);
  MeromorphicGerm part = lattice_sum ? lattice_gen_function(projected, order)
                                     : integral_gen_function(projected, order);
  return (quotient_residue(whole, edge) + part).is_zero();
}

}  // namespace

bool lattice_residue_law(const AffineCone& a, const ZVec& edge, int order) {
  return residue_law_impl(a, edge, order, true);
}

bool integral_residue_law(const AffineCone& a, const ZVec& edge, int order) {
  return residue_law_impl(a, edge, order, false);
}

}  // namespace emk
