// Rational polyhedra and cones: double-description round trips, the face
// lattice, supporting/transverse cones, quotient lattices, half-open
// subdivisions, and fundamental-box enumeration.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "emk/polyhedra.hpp"

using namespace emk;

namespace {

Rational q(long num, long den = 1) { return Rational(num, den); }

QVec qv(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(q(x));
  return v;
}

Polyhedron unit_triangle() {
  return Polyhedron::from_generators(2, {qv({0, 0}), qv({1, 0}), qv({0, 1})}, {}, {});
}

Polyhedron wide_triangle() {  // (0,0), (2,0), (0,3)
  return Polyhedron::from_generators(2, {qv({0, 0}), qv({2, 0}), qv({0, 3})}, {}, {});
}

Cone square_cone() {  // cone over a square: generators e3 +- e1, e3 +- e2
  return Cone::from_generators(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}});
}

// Exact membership in a half-open simplicial cone: x = sum alpha_j g_j with
// alpha_j >= 0, and alpha_j > 0 for marked facets.
bool in_half_open(const HalfOpenCone& hc, const QVec& x) {
  QMat gt = transpose(to_qmat(hc.cone.generators));
  auto alpha = solve(gt, x);
  if (!alpha.has_value()) return false;
  if (mat_vec(gt, *alpha) != x) return false;
  for (size_t j = 0; j < alpha->size(); ++j) {
    bool open = std::find(hc.open_facets.begin(), hc.open_facets.end(), static_cast<int>(j)) !=
                hc.open_facets.end();
    if (open ? ((*alpha)[j] <= 0) : ((*alpha)[j] < 0)) return false;
  }
  return true;
}

// Every integer point of the box lies in exactly one half-open piece iff it
// lies in the cone.
void check_exact_tiling(const Cone& c, const std::vector<HalfOpenCone>& pieces, int box) {
  ConeHRep h = cone_facets(c);
  std::vector<int> idx(c.dim, -box);
  while (true) {
    QVec x(c.dim);
    for (int i = 0; i < c.dim; ++i) x[i] = q(idx[i]);
    int count = 0;
    for (const auto& p : pieces)
      if (in_half_open(p, x)) ++count;
    CHECK(count == (cone_contains(h, x) ? 1 : 0));

    int i = 0;
    while (i < c.dim && idx[i] == box) idx[i++] = -box;
    if (i == c.dim) break;
    ++idx[i];
  }
}

int count_faces_of_dim(const std::vector<Face>& faces, int d) {
  int n = 0;
  for (const auto& f : faces)
    if (f.dim == d) ++n;
  return n;
}

}  // namespace

TEST_CASE("cone canonicalization and facets") {
  Cone c = Cone::from_generators(2, {{2, 0}, {1, 1}, {3, 3}});
  CHECK(c.generators == ZMat{{1, 0}, {1, 1}});  // primitive, deduplicated, sorted
  CHECK(c.cone_dim() == 2);
  CHECK(c.is_simplicial());
  CHECK(cone_is_pointed(c));

  ConeHRep h = cone_facets(c);
  CHECK(h.facets.size() == 2);
  CHECK(h.span_eqs.empty());
  CHECK(cone_contains(h, qv({5, 2})));
  CHECK(cone_contains(h, qv({0, 0})));
  CHECK_FALSE(cone_contains(h, qv({-1, 0})));
  CHECK_FALSE(cone_contains(h, qv({1, 2})));

  // Interior generators do not change the cone as a point set.
  Cone wide = Cone::from_generators(2, {{1, 0}, {1, 1}, {0, 1}});
  ConeHRep hw = cone_facets(wide);
  ConeHRep hq = cone_facets(Cone::from_generators(2, {{1, 0}, {0, 1}}));
  CHECK(hw.facets == hq.facets);
  CHECK(hw.span_eqs == hq.span_eqs);

  Cone line = Cone::from_generators(2, {{1, 0}}, {{0, 2}});
  CHECK_FALSE(cone_is_pointed(line));
  CHECK(line.lines == ZMat{{0, 1}});  // lineality basis is saturated

  // Opposite rays span a line: the polar has full-rank equalities only.
  Cone all = Cone::from_generators(1, {{1}, {-1}});
  CHECK_FALSE(cone_is_pointed(all));
}

TEST_CASE("double description round trips") {
  Polyhedron tri = unit_triangle();
  CHECK(tri.dim() == 2);
  CHECK(tri.poly_dim() == 2);
  CHECK(tri.ineq_normals().size() == 3);
  CHECK(tri.eq_normals().empty());
  CHECK(tri.is_bounded());
  CHECK(tri.is_lattice());
  CHECK(tri.contains(qv({0, 0})));
  CHECK(tri.contains({q(1, 3), q(1, 3)}));
  CHECK_FALSE(tri.contains(qv({1, 1})));

  Polyhedron tri2 = Polyhedron::from_inequalities(2, to_qmat(tri.ineq_normals()), tri.ineq_rhs());
  std::set<QVec> v1(tri.vertex_points().begin(), tri.vertex_points().end());
  std::set<QVec> v2(tri2.vertex_points().begin(), tri2.vertex_points().end());
  CHECK(v1 == v2);
  CHECK(tri2.ineq_normals() == tri.ineq_normals());

  // Interior and duplicate input points are discarded.
  Polyhedron cube = Polyhedron::from_generators(
      3,
      {qv({0, 0, 0}), qv({1, 0, 0}), qv({0, 1, 0}), qv({0, 0, 1}), qv({1, 1, 0}), qv({1, 0, 1}),
       qv({0, 1, 1}), qv({1, 1, 1}), {q(1, 2), q(1, 2), q(1, 2)}, qv({1, 1, 1})},
      {}, {});
  CHECK(cube.vertex_points().size() == 8);
  CHECK(cube.ineq_normals().size() == 6);

  Polyhedron quadrant = Polyhedron::from_inequalities(
      2, {{q(-1), q(0)}, {q(0), q(-1)}}, {q(0), q(0)});
  CHECK(quadrant.rays() == ZMat{{0, 1}, {1, 0}});
  CHECK_FALSE(quadrant.is_bounded());
  CHECK(quadrant.is_pointed());

  CHECK_THROWS_AS(Polyhedron::from_inequalities(1, {{q(1)}, {q(-1)}}, {q(-1), q(0)}), Error);

  // Constraints with equalities: the segment x+y = 1, x in [0,1].
  Polyhedron seg = Polyhedron::from_constraints(2, {{q(-1), q(0)}, {q(1), q(0)}},
                                                {q(0), q(1)}, {{q(1), q(1)}}, {q(1)});
  CHECK(seg.poly_dim() == 1);
  CHECK(seg.eq_normals() == ZMat{{1, 1}});
  CHECK(seg.eq_rhs() == QVec{q(1)});
  std::set<QVec> sv(seg.vertex_points().begin(), seg.vertex_points().end());
  CHECK(sv == std::set<QVec>{qv({0, 1}), qv({1, 0})});

  std::mt19937 rng(77);
  std::uniform_int_distribution<int> coord(-4, 4);
  for (int trial = 0; trial < 15; ++trial) {
    QMat pts;
    for (int i = 0; i < 6; ++i) pts.push_back(qv({coord(rng), coord(rng)}));
    Polyhedron p = Polyhedron::from_generators(2, pts, {}, {});
    for (const auto& x : pts) CHECK(p.contains(x));
    Polyhedron back = Polyhedron::from_constraints(2, to_qmat(p.ineq_normals()), p.ineq_rhs(),
                                                   to_qmat(p.eq_normals()), p.eq_rhs());
    std::set<QVec> a(p.vertex_points().begin(), p.vertex_points().end());
    std::set<QVec> b(back.vertex_points().begin(), back.vertex_points().end());
    CHECK(a == b);
  }
}

TEST_CASE("face lattice") {
  std::vector<Face> tri_faces = face_lattice(unit_triangle());
  CHECK(tri_faces.size() == 7);
  CHECK(count_faces_of_dim(tri_faces, 0) == 3);
  CHECK(count_faces_of_dim(tri_faces, 1) == 3);
  CHECK(count_faces_of_dim(tri_faces, 2) == 1);
  // Sorted by dimension, then active set; the full face has no active rows.
  CHECK(tri_faces.front().dim == 0);
  CHECK(tri_faces.back().dim == 2);
  CHECK(tri_faces.back().active.empty());
  for (const auto& f : tri_faces) {
    CHECK(static_cast<int>(f.span_basis.size()) == f.dim);
    // The representative point satisfies its active constraints with equality.
    const Polyhedron p = unit_triangle();
    for (int row : f.active)
      CHECK(dot(to_qvec(p.ineq_normals()[row]), f.affine_point) == p.ineq_rhs()[row]);
  }

  Polyhedron half = Polyhedron::from_inequalities(2, {{q(-1), q(0)}}, {q(0)});
  std::vector<Face> half_faces = face_lattice(half);
  CHECK(half_faces.size() == 2);
  CHECK(half_faces[0].dim == 1);  // the boundary line
  CHECK(half_faces[1].dim == 2);

  Cone sq = square_cone();
  Polyhedron sqp = Polyhedron::from_generators(3, {qv({0, 0, 0})}, sq.generators, {});
  std::vector<Face> sq_faces = face_lattice(sqp);
  CHECK(sq_faces.size() == 10);
  CHECK(count_faces_of_dim(sq_faces, 0) == 1);
  CHECK(count_faces_of_dim(sq_faces, 1) == 4);
  CHECK(count_faces_of_dim(sq_faces, 2) == 4);
  CHECK(count_faces_of_dim(sq_faces, 3) == 1);

  // Cube: 8 + 12 + 6 + 1 faces.
  Polyhedron cube = Polyhedron::from_inequalities(
      3,
      {{q(1), q(0), q(0)}, {q(-1), q(0), q(0)}, {q(0), q(1), q(0)}, {q(0), q(-1), q(0)},
       {q(0), q(0), q(1)}, {q(0), q(0), q(-1)}},
      {q(1), q(0), q(1), q(0), q(1), q(0)});
  std::vector<Face> cf = face_lattice(cube);
  CHECK(cf.size() == 27);
  CHECK(count_faces_of_dim(cf, 0) == 8);
  CHECK(count_faces_of_dim(cf, 1) == 12);
  CHECK(count_faces_of_dim(cf, 2) == 6);
}

TEST_CASE("supporting and transverse cones") {
  Polyhedron tri = unit_triangle();
  std::vector<Face> faces = face_lattice(tri);

  for (const auto& f : faces) {
    AffineCone sc = supporting_cone(tri, f);
    // Lineality of the supporting cone is the face direction space.
    CHECK(sc.cone.lines.size() == f.span_basis.size());
    TransverseCone tc = transverse_cone(tri, f);
    CHECK(tc.lattice.quotient_dim == 2 - f.dim);
    CHECK(cone_is_pointed(tc.cone));
  }

  // Vertex at the origin: cone(e1, e2).
  for (const auto& f : faces) {
    if (f.dim != 0 || !qvec_is_zero(f.affine_point)) continue;
    AffineCone sc = supporting_cone(tri, f);
    CHECK(sc.vertex == qv({0, 0}));
    CHECK(sc.cone.generators == ZMat{{0, 1}, {1, 0}});
  }

  // Full face: transverse cone is the zero cone in a 0-dimensional quotient.
  {
    const Face& full = faces.back();
    TransverseCone tc = transverse_cone(tri, full);
    CHECK(tc.lattice.quotient_dim == 0);
    CHECK(tc.cone.generators.empty());
  }

  // Diagonal facet: one-dimensional transverse cone with primitive generator.
  for (const auto& f : faces) {
    if (f.dim != 1) continue;
    TransverseCone tc = transverse_cone(tri, f);
    REQUIRE(tc.cone.generators.size() == 1);
    CHECK(gcd_vec(tc.cone.generators[0]) == 1);
  }

  // Vertex (2,0) of the wide triangle: edge-back directions (-2,3), (-1,0).
  Polyhedron tri2 = wide_triangle();
  for (const auto& f : face_lattice(tri2)) {
    if (f.dim != 0 || f.affine_point != qv({2, 0})) continue;
    TransverseCone tc = transverse_cone(tri2, f);
    CHECK(tc.cone.generators == ZMat{{-2, 3}, {-1, 0}});
    CHECK(tc.vertex == qv({2, 0}));
  }
}

TEST_CASE("lineality quotient and projection") {
  // R_{>=0} e1 + R e2 projects to the half-line.
  Polyhedron p = Polyhedron::from_generators(2, {qv({0, 0})}, {{1, 0}}, {{0, 1}});
  CHECK_FALSE(p.is_pointed());
  auto [lat, proj] = lineality_and_project(p);
  CHECK(lat.quotient_dim == 1);
  CHECK(lat.mod_basis == ZMat{{0, 1}});
  CHECK(proj.dim() == 1);
  CHECK(proj.vertex_points() == QMat{{q(0)}});
  CHECK(proj.rays() == ZMat{{1}});

  // Pointed input: identity quotient, polyhedron unchanged.
  Polyhedron tri = unit_triangle();
  auto [lat2, proj2] = lineality_and_project(tri);
  CHECK(lat2.quotient_dim == 2);
  CHECK(proj2.ineq_normals() == tri.ineq_normals());
  CHECK(proj2.ineq_rhs() == tri.ineq_rhs());

  // The whole plane projects to a point.
  Polyhedron plane = Polyhedron::from_generators(2, {qv({0, 0})}, {}, {{1, 0}, {0, 1}});
  auto [lat3, proj3] = lineality_and_project(plane);
  CHECK(lat3.quotient_dim == 0);
  CHECK(proj3.poly_dim() == 0);
}

TEST_CASE("quotient lattice maps") {
  QuotientLattice lat = QuotientLattice::by_subspace({{1, 1}}, 2);
  CHECK(lat.quotient_dim == 1);
  CHECK(lat.mod_basis == ZMat{{1, 1}});

  // The projection kills the subspace and maps Z^2 onto Z^1.
  CHECK(lat.project_z({1, 1}) == ZVec{0});
  ZVec a = lat.project_z({1, 0});
  ZVec b = lat.project_z({0, 1});
  Int g = gcd_vec({a[0], b[0]});
  CHECK(g == 1);

  // lift is a section of project.
  QVec y = {q(5, 3)};
  CHECK(lat.project(lat.lift(y)) == y);

  // Saturation: quotient by span{(2,2)} equals quotient by span{(1,1)}.
  QuotientLattice lat2 = QuotientLattice::by_subspace({{2, 2}}, 2);
  CHECK(lat2.mod_basis == lat.mod_basis);
  CHECK(lat2.proj == lat.proj);
}

TEST_CASE("fundamental box points") {
  CHECK(box_points(qv({0, 0}), {{1, 0}, {0, 1}}, {}) == std::vector<ZVec>{{0, 0}});
  CHECK(box_points(qv({0, 0}), {{1, 0}, {1, 2}}, {}) == std::vector<ZVec>{{0, 0}, {1, 1}});
  CHECK(box_points({q(1, 2), q(0)}, {{1, 0}, {0, 1}}, {}) == std::vector<ZVec>{{1, 0}});

  // Open marks shift [0,1) to (0,1].
  CHECK(box_points(qv({0, 0}), {{1, 0}, {0, 1}}, {0}) == std::vector<ZVec>{{1, 0}});
  CHECK(box_points(qv({0, 0}), {{1, 0}, {0, 1}}, {0, 1}) == std::vector<ZVec>{{1, 1}});

  // |box points| equals the lattice index, for any vertex shift and marks.
  ZMat gens = {{2, 1}, {0, 3}};
  CHECK(lattice_index(gens) == 6);
  CHECK(box_points(qv({0, 0}), gens, {}).size() == 6);
  CHECK(box_points({q(1, 3), q(1, 7)}, gens, {}).size() == 6);
  CHECK(box_points(qv({0, 0}), gens, {1}).size() == 6);

  // Lower-dimensional box inside Z^3.
  auto pts = box_points(qv({0, 0, 0}), {{1, 1, 0}, {1, -1, 0}}, {});
  CHECK(pts.size() == 2);  // index of the sublattice in its saturation

  CHECK_THROWS_AS(box_points(qv({0, 0}), {{1, 0}, {2, 0}}, {}), Error);
}

TEST_CASE("simplicial subdivision") {
  // Simplicial input passes through unchanged.
  Cone simp = Cone::from_generators(2, {{1, 0}, {1, 2}});
  auto pieces = simplicial_subdivision(simp);
  REQUIRE(pieces.size() == 1);
  CHECK(pieces[0].cone.generators == simp.generators);
  CHECK(pieces[0].open_facets.empty());

  // The square cone splits along a diagonal into two simplicial cones with a
  // single half-open shared facet; only original edges appear.
  Cone sq = square_cone();
  auto sq_pieces = simplicial_subdivision(sq);
  REQUIRE(sq_pieces.size() == 2);
  int open_total = 0;
  for (const auto& p : sq_pieces) {
    CHECK(p.cone.generators.size() == 3);
    CHECK(p.cone.is_simplicial());
    open_total += static_cast<int>(p.open_facets.size());
    for (const auto& g : p.cone.generators) {
      CHECK(std::find(sq.generators.begin(), sq.generators.end(), g) != sq.generators.end());
    }
  }
  CHECK(open_total == 1);
  check_exact_tiling(sq, sq_pieces, 2);

  Cone line = Cone::from_generators(2, {{1, 0}}, {{0, 1}});
  CHECK_THROWS_AS(simplicial_subdivision(line), Error);
}

TEST_CASE("unimodular subdivision") {
  Cone c2 = Cone::from_generators(2, {{1, 0}, {1, 2}});
  auto pieces = unimodular_subdivision(c2);
  REQUIRE(pieces.size() == 2);
  for (const auto& p : pieces) CHECK(lattice_index(p.cone.generators) == 1);
  check_exact_tiling(c2, pieces, 6);

  // Unimodular input passes through.
  Cone uni = Cone::from_generators(2, {{0, 1}, {1, 0}});
  auto upieces = unimodular_subdivision(uni);
  REQUIRE(upieces.size() == 1);
  CHECK(upieces[0].open_facets.empty());

  // cone(e1, e1 + k e2) needs k pieces.
  for (int k = 3; k <= 5; ++k) {
    Cone ck = Cone::from_generators(2, {{1, 0}, {1, k}});
    auto kp = unimodular_subdivision(ck);
    CHECK(kp.size() == static_cast<size_t>(k));
    for (const auto& p : kp) CHECK(lattice_index(p.cone.generators) == 1);
    check_exact_tiling(ck, kp, 5);
  }
}

TEST_CASE("combined unimodular tiling") {
  Cone sq = square_cone();
  auto pieces = unimodular_tiling(sq);
  CHECK(pieces.size() >= 2);
  for (const auto& p : pieces) CHECK(lattice_index(p.cone.generators) == 1);
  check_exact_tiling(sq, pieces, 3);

  // A lower-dimensional cone: unimodularity is relative to the span lattice.
  Cone flat = Cone::from_generators(3, {{1, 0, 0}, {1, 2, 0}});
  auto fp = unimodular_tiling(flat);
  CHECK(fp.size() == 2);
  check_exact_tiling(flat, fp, 4);

  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> entry(-3, 3);
  int done = 0;
  while (done < 10) {
    ZMat gens;
    for (int i = 0; i < 3; ++i) gens.push_back({entry(rng), entry(rng)});
    ZMat nonzero;
    for (auto& g : gens)
      if (!zvec_is_zero(g)) nonzero.push_back(g);
    if (nonzero.empty()) continue;
    Cone c = Cone::from_generators(2, nonzero);
    if (!cone_is_pointed(c) || c.generators.empty()) continue;
    ++done;
    auto tp = unimodular_tiling(c);
    for (const auto& p : tp) {
      if (p.cone.cone_dim() == 2) {
        CHECK(lattice_index(p.cone.generators) == 1);
      } else {
        CHECK(gcd_vec(p.cone.generators[0]) == 1);
      }
    }
    check_exact_tiling(c, tp, 5);
  }
}

TEST_CASE("lattice polyhedron detection and dilation membership") {
  CHECK(unit_triangle().is_lattice());
  CHECK(wide_triangle().is_lattice());

  Polyhedron shifted = Polyhedron::from_generators(1, {{q(1, 2)}, {q(3, 2)}}, {}, {});
  CHECK_FALSE(shifted.is_lattice());

  Polyhedron frac_vertex =
      Polyhedron::from_generators(2, {{q(1, 2), q(0)}, qv({2, 0}), qv({0, 1})}, {}, {});
  CHECK_FALSE(frac_vertex.is_lattice());

  // No vertices at all: the minimal face is the boundary line.  x + 2y = 1/2
  // has no lattice points, x + 2y = 1 does.
  Polyhedron bad_slab = Polyhedron::from_inequalities(2, {{q(2), q(4)}}, {q(1)});
  CHECK_FALSE(bad_slab.is_lattice());
  Polyhedron good_slab = Polyhedron::from_inequalities(2, {{q(2), q(4)}}, {q(2)});
  CHECK(good_slab.is_lattice());

  Polyhedron tri = unit_triangle();
  CHECK(tri.contains_dilated(qv({2, 0}), q(2)));
  CHECK(tri.contains_dilated(qv({1, 1}), q(2)));
  CHECK_FALSE(tri.contains_dilated(qv({3, 0}), q(2)));
  CHECK(tri.contains_dilated(qv({1, 0}), q(3, 2)));
  CHECK_FALSE(tri.contains_dilated(qv({2, 0}), q(3, 2)));

  Polyhedron seg = Polyhedron::from_constraints(2, {{q(-1), q(0)}, {q(1), q(0)}},
                                                {q(0), q(1)}, {{q(1), q(1)}}, {q(1)});
  CHECK(seg.contains_dilated(qv({1, 2}), q(3)));
  CHECK_FALSE(seg.contains_dilated(qv({1, 1}), q(3)));
}

TEST_CASE("generator enumeration for homogeneous systems") {
  GeneratorSet quad = enumerate_generators(2, {{q(-1), q(0)}, {q(0), q(-1)}}, {});
  CHECK(quad.rays == ZMat{{0, 1}, {1, 0}});
  CHECK(quad.lines.empty());

  GeneratorSet half = enumerate_generators(2, {{q(-1), q(0)}}, {});
  CHECK(half.rays == ZMat{{1, 0}});
  CHECK(half.lines == ZMat{{0, 1}});

  GeneratorSet eq = enumerate_generators(2, {{q(-1), q(0)}}, {{q(0), q(1)}});
  CHECK(eq.rays == ZMat{{1, 0}});
  CHECK(eq.lines.empty());

  GeneratorSet cone3 = enumerate_generators(
      3, {{q(-1), q(0), q(1)}, {q(1), q(0), q(1)}, {q(0), q(-1), q(1)}, {q(0), q(1), q(1)}}, {});
  CHECK(cone3.rays.size() == 4);  // the downward square cone
  CHECK(cone3.lines.empty());
}
