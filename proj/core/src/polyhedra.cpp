#include "emk/polyhedra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace emk {

namespace {

// Primitive integer normal with a positive rescaling (inequality directions
// must not flip).
std::pair<ZVec, Rational> primitive_same_direction(const QVec& a) {
  auto [prim, c] = canonical_direction(a);
  if (c < 0) {
    for (auto& x : prim) x = -x;
    c = -c;
  }
  return {prim, c};
}

ZVec ambient_from_coords(const ZVec& w, const ZMat& basis_rows, int dim) {
  ZVec g(static_cast<std::size_t>(dim), Int(0));
  for (std::size_t i = 0; i < w.size(); ++i)
    for (int k = 0; k < dim; ++k) g[static_cast<std::size_t>(k)] += w[i] * basis_rows[i][static_cast<std::size_t>(k)];
  return g;
}

}  // namespace

// ---- generator enumeration (double description) ------------------------------

GeneratorSet enumerate_generators(int dim, const QMat& ineqs, const QMat& eqs) {
  GeneratorSet out;
  if (dim == 0) return out;
  QMat stacked = ineqs;
  for (const auto& r : eqs) stacked.push_back(r);
  ZMat lines;
  if (stacked.empty()) {
    lines = to_zmat_identity(dim);
  } else {
    lines = integer_kernel_q(stacked);
  }
  if (!lines.empty()) {
    out.lines = lines;
    ZMat w = integer_kernel(lines);
    if (w.empty()) return out;  // lineality is everything
    int q = static_cast<int>(w.size());
    QMat wq = to_qmat(w);
    QMat wwt(q, QVec(q));
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) wwt[i][j] = dot(wq[i], wq[j]);
    auto project_row = [&](const QVec& a) {
      QVec rhs(static_cast<std::size_t>(q));
      for (int i = 0; i < q; ++i) rhs[static_cast<std::size_t>(i)] = dot(wq[i], a);
      auto sol = solve(wwt, rhs);
      if (!sol) throw Error("enumerate_generators: constraint not orthogonal to lineality");
      return *sol;
    };
    QMat pineq, peq;
    for (const auto& a : ineqs) pineq.push_back(project_row(a));
    for (const auto& a : eqs) peq.push_back(project_row(a));
    GeneratorSet inner = enumerate_generators(q, pineq, peq);
    for (const auto& ray : inner.rays) {
      // Lift x = W^T (W W^T)^{-1} ray.
      auto sol = solve(wwt, to_qvec(ray));
      if (!sol) throw Error("enumerate_generators: lift failed");
      QVec x(static_cast<std::size_t>(dim), Rational(0));
      for (int i = 0; i < q; ++i)
        for (int k = 0; k < dim; ++k) x[static_cast<std::size_t>(k)] += (*sol)[static_cast<std::size_t>(i)] * wq[i][static_cast<std::size_t>(k)];
      out.rays.push_back(primitive_same_direction(x).first);
    }
    std::sort(out.rays.begin(), out.rays.end());
    return out;
  }
  // Pointed case: extreme rays lie on rank d-1 subsets of tight constraints.
  int eq_rank = eqs.empty() ? 0 : rank(eqs);
  int k0 = dim - 1 - eq_rank;
  if (k0 < 0) return out;
  int m = static_cast<int>(ineqs.size());
  if (m > 62) throw Error("enumerate_generators: too many inequality rows");
  if (k0 > m) return out;
  std::set<ZVec> rays;
  std::vector<int> comb(static_cast<std::size_t>(k0));
  for (int i = 0; i < k0; ++i) comb[static_cast<std::size_t>(i)] = i;
  auto feasible = [&](const QVec& u) {
    for (const auto& a : ineqs)
      if (dot(a, u) > 0) return false;
    return true;
  };
  auto process = [&]() {
    QMat sys = eqs;
    for (int i : comb) sys.push_back(ineqs[static_cast<std::size_t>(i)]);
    if (sys.empty()) sys.push_back(QVec(static_cast<std::size_t>(dim), Rational(0)));
    if (rank(sys) != dim - 1) return;
    QMat ker = kernel_basis(sys);
    if (static_cast<int>(ker.size()) != 1) return;
    QVec u = ker[0];
    if (feasible(u)) {
      rays.insert(primitive_same_direction(u).first);
    } else {
      QVec nu = qvec_scale(Rational(-1), u);
      if (feasible(nu)) rays.insert(primitive_same_direction(nu).first);
    }
  };
  if (k0 == 0) {
    process();
  } else {
    while (true) {
      process();
      int i = k0 - 1;
      while (i >= 0 && comb[static_cast<std::size_t>(i)] == m - k0 + i) --i;
      if (i < 0) break;
      ++comb[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k0; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  out.rays.assign(rays.begin(), rays.end());
  return out;
}

// ---- Cone ---------------------------------------------------------------------

Cone Cone::from_generators(int dim, const ZMat& generators, const ZMat& lines) {
  Cone c;
  c.dim = dim;
  std::set<ZVec> gens;
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != dim) throw Error("cone: generator dimension mismatch");
    if (zvec_is_zero(g)) continue;
    ZVec p = g;
    make_primitive(p);
    gens.insert(p);
  }
  c.generators.assign(gens.begin(), gens.end());
  c.lines = lines.empty() ? ZMat{} : saturate_span(lines, dim);
  return c;
}

int Cone::cone_dim() const {
  ZMat rows = generators;
  for (const auto& l : lines) rows.push_back(l);
  if (rows.empty()) return 0;
  return rank(to_qmat(rows));
}

ConeHRep cone_facets(const Cone& c) {
  QMat ineqs, eqs;
  for (const auto& g : c.generators) ineqs.push_back(to_qvec(g));
  for (const auto& l : c.lines) eqs.push_back(to_qvec(l));
  GeneratorSet polar = enumerate_generators(c.dim, ineqs, eqs);
  return ConeHRep{polar.rays, polar.lines};
}

bool cone_contains(const ConeHRep& h, const QVec& x) {
  for (const auto& a : h.facets)
    if (dot_zq(a, x) > 0) return false;
  for (const auto& e : h.span_eqs)
    if (dot_zq(e, x) != 0) return false;
  return true;
}

bool cone_is_pointed(const Cone& c) {
  if (!c.lines.empty()) return false;
  ConeHRep h = cone_facets(c);
  ZMat rows = h.facets;
  for (const auto& e : h.span_eqs) rows.push_back(e);
  if (rows.empty()) return c.dim == 0;
  return rank(to_qmat(rows)) == c.dim;
}

// ---- QuotientLattice -----------------------------------------------------------

QuotientLattice QuotientLattice::by_subspace(const ZMat& span_rows, int dim) {
  QuotientLattice q;
  q.ambient_dim = dim;
  q.mod_basis = span_rows.empty() ? ZMat{} : saturate_span(span_rows, dim);
  q.proj = q.mod_basis.empty() ? to_zmat_identity(dim) : integer_kernel(q.mod_basis);
  q.quotient_dim = static_cast<int>(q.proj.size());
  return q;
}

QVec QuotientLattice::project(const QVec& x) const {
  QVec y(static_cast<std::size_t>(quotient_dim));
  for (int i = 0; i < quotient_dim; ++i) y[static_cast<std::size_t>(i)] = dot_zq(proj[static_cast<std::size_t>(i)], x);
  return y;
}

ZVec QuotientLattice::project_z(const ZVec& x) const { return mat_vec_z(proj, x); }

QVec QuotientLattice::lift(const QVec& y) const {
  QMat wq = to_qmat(proj);
  int q = quotient_dim;
  QMat wwt(q, QVec(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) wwt[i][j] = dot(wq[i], wq[j]);
  auto sol = solve(wwt, y);
  if (!sol) throw Error("quotient lattice: lift failed");
  QVec x(static_cast<std::size_t>(ambient_dim), Rational(0));
  for (int i = 0; i < q; ++i)
    for (int k = 0; k < ambient_dim; ++k)
      x[static_cast<std::size_t>(k)] += (*sol)[static_cast<std::size_t>(i)] * wq[i][static_cast<std::size_t>(k)];
  return x;
}

// ---- Polyhedron ----------------------------------------------------------------

namespace {

struct VRep {
  QMat vertices;
  ZMat rays;
  ZMat lines;
};

struct HRep {
  ZMat ineq_a;
  QVec ineq_b;
  ZMat eq_a;
  QVec eq_b;
};

VRep vrep_from_hrep(int dim, const QMat& a, const QVec& b, const QMat& e, const QVec& c) {
  QMat ineqs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    QVec row = a[i];
    row.push_back(-b[i]);
    ineqs.push_back(row);
  }
  QVec tau(static_cast<std::size_t>(dim) + 1, Rational(0));
  tau.back() = Rational(-1);
  ineqs.push_back(tau);
  QMat eqs;
  for (std::size_t i = 0; i < e.size(); ++i) {
    QVec row = e[i];
    row.push_back(-c[i]);
    eqs.push_back(row);
  }
  GeneratorSet gs = enumerate_generators(dim + 1, ineqs, eqs);
  VRep v;
  for (const auto& r : gs.rays) {
    Int last = r.back();
    if (last > 0) {
      QVec x(static_cast<std::size_t>(dim));
      for (int k = 0; k < dim; ++k) x[static_cast<std::size_t>(k)] = Rational(r[static_cast<std::size_t>(k)]) / Rational(last);
      v.vertices.push_back(x);
    } else {
      ZVec x(r.begin(), r.end() - 1);
      make_primitive(x);
      v.rays.push_back(x);
    }
  }
  ZMat lf;
  for (const auto& l : gs.lines) {
    if (l.back() != 0) throw Error("polyhedron: homogenization line with nonzero last coordinate");
    lf.push_back(ZVec(l.begin(), l.end() - 1));
  }
  if (!lf.empty()) v.lines = saturate_span(lf, dim);
  if (v.vertices.empty()) throw Error("polyhedron is empty");
  std::sort(v.vertices.begin(), v.vertices.end());
  std::sort(v.rays.begin(), v.rays.end());
  return v;
}

HRep hrep_from_vrep(int dim, const QMat& vertices, const ZMat& rays, const ZMat& lines) {
  QMat gens;
  for (const auto& v : vertices) {
    QVec row = v;
    row.push_back(Rational(1));
    gens.push_back(row);
  }
  for (const auto& r : rays) {
    QVec row = to_qvec(r);
    row.push_back(Rational(0));
    gens.push_back(row);
  }
  QMat eqs;
  for (const auto& l : lines) {
    QVec row = to_qvec(l);
    row.push_back(Rational(0));
    eqs.push_back(row);
  }
  GeneratorSet polar = enumerate_generators(dim + 1, gens, eqs);
  HRep h;
  std::vector<std::pair<ZVec, Rational>> ineq_rows, eq_rows;
  for (const auto& u : polar.rays) {
    QVec normal(u.begin(), u.end() - 1);
    if (qvec_is_zero(normal)) continue;  // the tau >= 0 facet
    Rational rhs = -Rational(u.back());
    auto [prim, f] = primitive_same_direction(normal);
    rhs /= f;
    // Keep only rows tight at some vertex-point: facets of the polyhedron.
    bool tight = false;
    for (const auto& v : vertices)
      if (dot_zq(prim, v) == rhs) {
        tight = true;
        break;
      }
    if (tight) ineq_rows.emplace_back(prim, rhs);
  }
  for (const auto& u : polar.lines) {
    QVec normal(u.begin(), u.end() - 1);
    if (qvec_is_zero(normal)) throw Error("polyhedron: degenerate affine-hull normal");
    Rational rhs = -Rational(u.back());
    auto [prim, f] = canonical_direction(normal);
    rhs /= f;
    eq_rows.emplace_back(prim, rhs);
  }
  std::sort(ineq_rows.begin(), ineq_rows.end());
  ineq_rows.erase(std::unique(ineq_rows.begin(), ineq_rows.end()), ineq_rows.end());
  std::sort(eq_rows.begin(), eq_rows.end());
  for (auto& [p, r] : ineq_rows) {
    h.ineq_a.push_back(p);
    h.ineq_b.push_back(r);
  }
  for (auto& [p, r] : eq_rows) {
    h.eq_a.push_back(p);
    h.eq_b.push_back(r);
  }
  return h;
}

}  // namespace

Polyhedron Polyhedron::from_constraints(int dim, const QMat& a, const QVec& b, const QMat& e,
                                        const QVec& c) {
  if (a.size() != b.size() || e.size() != c.size())
    throw Error("polyhedron: constraint row/rhs count mismatch");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != dim) throw Error("polyhedron: constraint dimension mismatch");
  for (const auto& row : e)
    if (static_cast<int>(row.size()) != dim) throw Error("polyhedron: constraint dimension mismatch");
  VRep v = vrep_from_hrep(dim, a, b, e, c);
  HRep h = hrep_from_vrep(dim, v.vertices, v.rays, v.lines);
  Polyhedron p;
  p.dim_ = dim;
  p.ineq_a_ = std::move(h.ineq_a);
  p.ineq_b_ = std::move(h.ineq_b);
  p.eq_a_ = std::move(h.eq_a);
  p.eq_b_ = std::move(h.eq_b);
  p.vertices_ = std::move(v.vertices);
  p.rays_ = std::move(v.rays);
  p.lines_ = std::move(v.lines);
  return p;
}

Polyhedron Polyhedron::from_inequalities(int dim, const QMat& a, const QVec& b) {
  return from_constraints(dim, a, b, {}, {});
}

Polyhedron Polyhedron::from_generators(int dim, const QMat& vertices, const ZMat& rays,
                                       const ZMat& lines) {
  QMat verts = vertices;
  if (verts.empty() && (!rays.empty() || !lines.empty()))
    verts.push_back(QVec(static_cast<std::size_t>(dim), Rational(0)));
  if (verts.empty()) throw Error("polyhedron: no generators");
  for (const auto& v : verts)
    if (static_cast<int>(v.size()) != dim) throw Error("polyhedron: vertex dimension mismatch");
  ZMat prim_rays;
  for (const auto& r : rays) {
    if (static_cast<int>(r.size()) != dim) throw Error("polyhedron: ray dimension mismatch");
    if (zvec_is_zero(r)) continue;
    ZVec p = r;
    make_primitive(p);
    prim_rays.push_back(p);
  }
  HRep h = hrep_from_vrep(dim, verts, prim_rays, lines.empty() ? ZMat{} : saturate_span(lines, dim));
  // Round trip for a minimal generator description.
  return from_constraints(dim, to_qmat(h.ineq_a), h.ineq_b, to_qmat(h.eq_a), h.eq_b);
}

int Polyhedron::poly_dim() const { return dim_ - static_cast<int>(eq_a_.size()); }

bool Polyhedron::contains(const QVec& x) const { return contains_dilated(x, Rational(1)); }

bool Polyhedron::contains_dilated(const QVec& x, const Rational& t) const {
  for (std::size_t i = 0; i < ineq_a_.size(); ++i)
    if (dot_zq(ineq_a_[i], x) > t * ineq_b_[i]) return false;
  for (std::size_t i = 0; i < eq_a_.size(); ++i)
    if (dot_zq(eq_a_[i], x) != t * eq_b_[i]) return false;
  return true;
}

namespace {

// Does the affine span point + span(rows) contain a lattice point?
bool affine_span_has_lattice_point(const QVec& point, const ZMat& span_rows, int dim) {
  ZMat n = span_rows.empty() ? to_zmat_identity(dim) : integer_kernel(span_rows);
  if (n.empty()) return true;
  ZVec rhs(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    Rational v = dot_zq(n[i], point);
    if (denominator(v) != 1) return false;
    rhs[i] = numerator(v);
  }
  return solve_integer(n, rhs).has_value();
}

}  // namespace

bool Polyhedron::is_lattice() const {
  for (const Face& f : face_lattice(*this)) {
    if (f.dim != static_cast<int>(lines_.size())) continue;  // minimal faces only
    if (!affine_span_has_lattice_point(f.affine_point, f.span_basis, dim_)) return false;
  }
  return true;
}

// ---- face lattice ---------------------------------------------------------------

std::vector<Face> face_lattice(const Polyhedron& p) {
  const QMat& verts = p.vertex_points();
  const ZMat& rays = p.rays();
  const ZMat& lines = p.lines();
  int nv = static_cast<int>(verts.size());
  int nr = static_cast<int>(rays.size());
  int nl = static_cast<int>(lines.size());
  int ng = nv + nr + nl;
  int rows = static_cast<int>(p.ineq_normals().size());
  std::vector<std::vector<bool>> tight(static_cast<std::size_t>(rows),
                                       std::vector<bool>(static_cast<std::size_t>(ng), false));
  for (int i = 0; i < rows; ++i) {
    for (int g = 0; g < ng; ++g) {
      bool t;
      if (g < nv)
        t = dot_zq(p.ineq_normals()[static_cast<std::size_t>(i)], verts[static_cast<std::size_t>(g)]) ==
            p.ineq_rhs()[static_cast<std::size_t>(i)];
      else if (g < nv + nr)
        t = dot_z(p.ineq_normals()[static_cast<std::size_t>(i)], rays[static_cast<std::size_t>(g - nv)]) == 0;
      else
        t = true;  // lines lie in every supporting hyperplane direction space
      tight[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)] = t;
    }
  }
  auto closure_active = [&](const std::vector<int>& gens) {
    std::vector<int> act;
    for (int i = 0; i < rows; ++i) {
      bool all = true;
      for (int g : gens)
        if (!tight[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)]) {
          all = false;
          break;
        }
      if (all) act.push_back(i);
    }
    return act;
  };
  auto gens_of_active = [&](const std::vector<int>& act) {
    std::vector<int> gens;
    for (int g = 0; g < ng; ++g) {
      bool all = true;
      for (int i : act)
        if (!tight[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)]) {
          all = false;
          break;
        }
      if (all) gens.push_back(g);
    }
    return gens;
  };
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  std::vector<int> all_gens(static_cast<std::size_t>(ng));
  for (int g = 0; g < ng; ++g) all_gens[static_cast<std::size_t>(g)] = g;
  queue.push_back(all_gens);
  seen.insert(all_gens);
  std::vector<Face> out;
  while (!queue.empty()) {
    std::vector<int> gens = queue.back();
    queue.pop_back();
    std::vector<int> act = closure_active(gens);
    Face f;
    f.active = act;
    f.gen_indices = gens;
    bool has_vertex = false;
    for (int g : gens)
      if (g < nv) {
        has_vertex = true;
        f.affine_point = verts[static_cast<std::size_t>(g)];
        break;
      }
    if (!has_vertex) continue;
    ZMat span;
    const QVec& base = f.affine_point;
    QMat rational_diffs;
    for (int g : gens) {
      if (g < nv) {
        QVec d = qvec_sub(verts[static_cast<std::size_t>(g)], base);
        if (!qvec_is_zero(d)) rational_diffs.push_back(d);
      } else if (g < nv + nr) {
        span.push_back(rays[static_cast<std::size_t>(g - nv)]);
      } else {
        span.push_back(lines[static_cast<std::size_t>(g - nv - nr)]);
      }
    }
    for (const auto& r : scale_rows_to_int(rational_diffs)) span.push_back(r);
    f.span_basis = span.empty() ? ZMat{} : saturate_span(span, p.dim());
    f.dim = static_cast<int>(f.span_basis.size());
    out.push_back(f);
    for (int j = 0; j < rows; ++j) {
      if (std::binary_search(act.begin(), act.end(), j)) continue;
      std::vector<int> sub;
      for (int g : gens)
        if (tight[static_cast<std::size_t>(j)][static_cast<std::size_t>(g)]) sub.push_back(g);
      if (sub.empty()) continue;
      std::vector<int> sub_act = closure_active(sub);
      std::vector<int> sub_gens = gens_of_active(sub_act);
      if (seen.insert(sub_gens).second) queue.push_back(sub_gens);
    }
  }
  std::sort(out.begin(), out.end(), [](const Face& x, const Face& y) {
    if (x.dim != y.dim) return x.dim < y.dim;
    return x.active < y.active;
  });
  return out;
}

AffineCone supporting_cone(const Polyhedron& p, const Face& f) {
  QMat ineqs, eqs;
  for (int i : f.active) ineqs.push_back(to_qvec(p.ineq_normals()[static_cast<std::size_t>(i)]));
  for (const auto& e : p.eq_normals()) eqs.push_back(to_qvec(e));
  GeneratorSet gs = enumerate_generators(p.dim(), ineqs, eqs);
  AffineCone a;
  a.vertex = f.affine_point;
  a.cone = Cone::from_generators(p.dim(), gs.rays, gs.lines);
  return a;
}

TransverseCone transverse_cone(const Polyhedron& p, const Face& f) {
  TransverseCone t;
  t.lattice = QuotientLattice::by_subspace(f.span_basis, p.dim());
  AffineCone sc = supporting_cone(p, f);
  ZMat proj_gens;
  for (const auto& g : sc.cone.generators) {
    ZVec pg = t.lattice.project_z(g);
    if (!zvec_is_zero(pg)) proj_gens.push_back(pg);
  }
  for (const auto& l : sc.cone.lines) {
    if (!zvec_is_zero(t.lattice.project_z(l)))
      throw Error("transverse_cone: supporting cone lineality exceeds the face");
  }
  t.cone = Cone::from_generators(t.lattice.quotient_dim, proj_gens, {});
  t.vertex = t.lattice.project(f.affine_point);
  return t;
}

std::pair<QuotientLattice, Polyhedron> lineality_and_project(const Polyhedron& p) {
  QuotientLattice ql = QuotientLattice::by_subspace(p.lines(), p.dim());
  if (p.lines().empty()) return {ql, p};
  QMat wq = to_qmat(ql.proj);
  int q = ql.quotient_dim;
  QMat wwt(q, QVec(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) wwt[i][j] = dot(wq[i], wq[j]);
  auto project_row = [&](const QVec& a) {
    QVec rhs(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) rhs[static_cast<std::size_t>(i)] = dot(wq[i], a);
    auto sol = solve(wwt, rhs);
    if (!sol) throw Error("lineality_and_project: row not orthogonal to lineality");
    return *sol;
  };
  QMat a2, e2;
  for (const auto& a : p.ineq_normals()) a2.push_back(project_row(to_qvec(a)));
  for (const auto& e : p.eq_normals()) e2.push_back(project_row(to_qvec(e)));
  return {ql, Polyhedron::from_constraints(q, a2, p.ineq_rhs(), e2, p.eq_rhs())};
}

// ---- box points ------------------------------------------------------------------

std::vector<ZVec> box_points(const QVec& vertex, const ZMat& gens,
                             const std::vector<int>& open_marks) {
  int d = static_cast<int>(vertex.size());
  int p = static_cast<int>(gens.size());
  std::vector<bool> open(static_cast<std::size_t>(p), false);
  for (int j : open_marks) {
    if (j < 0 || j >= p) throw Error("box_points: open mark out of range");
    open[static_cast<std::size_t>(j)] = true;
  }
  std::vector<ZVec> out;
  if (p == 0) {
    ZVec x(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      if (denominator(vertex[static_cast<std::size_t>(k)]) != 1) return out;
      x[static_cast<std::size_t>(k)] = numerator(vertex[static_cast<std::size_t>(k)]);
    }
    out.push_back(x);
    return out;
  }
  if (rank(to_qmat(gens)) != p) throw Error("box_points: generators are dependent");
  ZVec x0(static_cast<std::size_t>(d), Int(0));
  ZMat r = integer_kernel(gens);
  if (!r.empty()) {
    ZVec rhs(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      Rational v = dot_zq(r[i], vertex);
      if (denominator(v) != 1) return out;
      rhs[i] = numerator(v);
    }
    auto sol = solve_integer(r, rhs);
    if (!sol) return out;
    x0 = *sol;
  }
  ZMat bsp = saturate_span(gens, d);
  QMat c(static_cast<std::size_t>(d), QVec(static_cast<std::size_t>(p)));
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < p; ++j) c[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = Rational(gens[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
  QVec diff(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) diff[static_cast<std::size_t>(k)] = Rational(x0[static_cast<std::size_t>(k)]) - vertex[static_cast<std::size_t>(k)];
  auto alpha0 = solve(c, diff);
  if (!alpha0) throw Error("box_points: base point not in the span");
  QMat g(static_cast<std::size_t>(p), QVec(static_cast<std::size_t>(p)));
  for (int j = 0; j < p; ++j) {
    auto col = solve(c, to_qvec(bsp[static_cast<std::size_t>(j)]));
    if (!col) throw Error("box_points: span basis not in the span");
    for (int i = 0; i < p; ++i) g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*col)[static_cast<std::size_t>(i)];
  }
  QMat ginv = inverse(g);
  std::vector<Int> lo(static_cast<std::size_t>(p)), hi(static_cast<std::size_t>(p));
  bool first = true;
  for (unsigned mask = 0; mask < (1u << p); ++mask) {
    QVec corner(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i)
      corner[static_cast<std::size_t>(i)] = Rational(((mask >> i) & 1u) ? 1 : 0) - (*alpha0)[static_cast<std::size_t>(i)];
    QVec m = mat_vec(ginv, corner);
    for (int i = 0; i < p; ++i) {
      Int fl = rat_floor(m[static_cast<std::size_t>(i)]);
      Int ce = rat_ceil(m[static_cast<std::size_t>(i)]);
      if (first) {
        lo[static_cast<std::size_t>(i)] = fl;
        hi[static_cast<std::size_t>(i)] = ce;
      } else {
        lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)], fl);
        hi[static_cast<std::size_t>(i)] = std::max(hi[static_cast<std::size_t>(i)], ce);
      }
    }
    first = false;
  }
  Int volume(1);
  for (int i = 0; i < p; ++i) {
    volume *= (hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)] + 1);
    if (volume > 10000000) throw Error("box_points: enumeration region too large");
  }
  ZVec m = lo;
  while (true) {
    QVec alpha = *alpha0;
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < p; ++i)
        alpha[static_cast<std::size_t>(i)] += g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * Rational(m[static_cast<std::size_t>(j)]);
    bool ok = true;
    for (int i = 0; i < p && ok; ++i) {
      const Rational& v = alpha[static_cast<std::size_t>(i)];
      ok = open[static_cast<std::size_t>(i)] ? (v > 0 && v <= 1) : (v >= 0 && v < 1);
    }
    if (ok) {
      ZVec x = x0;
      for (int j = 0; j < p; ++j)
        for (int k = 0; k < d; ++k)
          x[static_cast<std::size_t>(k)] += m[static_cast<std::size_t>(j)] * bsp[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      out.push_back(x);
    }
    int i = 0;
    while (i < p) {
      if (m[static_cast<std::size_t>(i)] < hi[static_cast<std::size_t>(i)]) {
        ++m[static_cast<std::size_t>(i)];
        break;
      }
      m[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)];
      ++i;
    }
    if (i == p) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- subdivisions -----------------------------------------------------------------

namespace {

struct CoordSetup {
  ZMat basis;   // rows: lattice basis of the span
  ZMat coords;  // generator coordinates in that basis, one row per generator
  int span_dim = 0;
};

CoordSetup coords_setup(const Cone& c) {
  CoordSetup s;
  s.basis = c.generators.empty() ? ZMat{} : saturate_span(c.generators, c.dim);
  s.span_dim = static_cast<int>(s.basis.size());
  QMat m(static_cast<std::size_t>(c.dim), QVec(static_cast<std::size_t>(s.span_dim)));
  for (int r = 0; r < c.dim; ++r)
    for (int i = 0; i < s.span_dim; ++i) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = Rational(s.basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]);
  for (const auto& gvec : c.generators) {
    auto sol = solve(m, to_qvec(gvec));
    if (!sol) throw Error("subdivision: generator outside span");
    ZVec row(static_cast<std::size_t>(s.span_dim));
    for (int i = 0; i < s.span_dim; ++i) {
      if (denominator((*sol)[static_cast<std::size_t>(i)]) != 1)
        throw Error("subdivision: non-integral generator coordinates");
      row[static_cast<std::size_t>(i)] = numerator((*sol)[static_cast<std::size_t>(i)]);
    }
    s.coords.push_back(row);
  }
  return s;
}

// Recursive placing triangulation on generator index sets.
void place_indices(const ZMat& coords, const std::vector<int>& idx, int dim_here,
                   std::vector<std::vector<int>>& out) {
  if (static_cast<int>(idx.size()) == dim_here) {
    out.push_back(idx);
    return;
  }
  int span = static_cast<int>(coords.empty() ? 0 : coords[0].size());
  QMat sub;
  for (int i : idx) sub.push_back(to_qvec(coords[static_cast<std::size_t>(i)]));
  GeneratorSet polar = enumerate_generators(span, sub, {});
  int pivot = idx[0];
  for (const auto& a : polar.rays) {
    if (dot_z(a, coords[static_cast<std::size_t>(pivot)]) == 0) continue;  // facet contains the pivot
    std::vector<int> facet_idx;
    for (int i : idx)
      if (dot_z(a, coords[static_cast<std::size_t>(i)]) == 0) facet_idx.push_back(i);
    std::vector<std::vector<int>> pieces;
    place_indices(coords, facet_idx, dim_here - 1, pieces);
    for (auto& piece : pieces) {
      piece.push_back(pivot);
      std::sort(piece.begin(), piece.end());
      out.push_back(piece);
    }
  }
}

// Stellar subdivision of a simplicial coordinate cone into unimodular pieces.
void stellar_leaves(const ZMat& square, std::vector<ZMat>& out) {
  int l = static_cast<int>(square.size());
  QMat q = to_qmat(square);
  Rational dt = det(q);
  if (dt == 0) throw Error("subdivision: degenerate simplicial piece");
  if (dt == 1 || dt == -1) {
    out.push_back(square);
    return;
  }
  QVec origin(static_cast<std::size_t>(l), Rational(0));
  std::vector<ZVec> box = box_points(origin, square, {});
  QMat cols(static_cast<std::size_t>(l), QVec(static_cast<std::size_t>(l)));
  for (int r = 0; r < l; ++r)
    for (int j = 0; j < l; ++j) cols[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = Rational(square[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)]);
  ZVec best;
  QVec best_alpha;
  Rational best_sum;
  for (const auto& w : box) {
    if (zvec_is_zero(w)) continue;
    auto alpha = solve(cols, to_qvec(w));
    if (!alpha) throw Error("subdivision: box point outside span");
    Rational sum(0);
    for (const auto& a : *alpha) sum += a;
    if (best.empty() || sum < best_sum || (sum == best_sum && *alpha < best_alpha)) {
      best = w;
      best_alpha = *alpha;
      best_sum = sum;
    }
  }
  if (best.empty()) throw Error("subdivision: missing interior box point");
  for (int j = 0; j < l; ++j) {
    if (best_alpha[static_cast<std::size_t>(j)] == 0) continue;
    ZMat child = square;
    child[static_cast<std::size_t>(j)] = best;
    stellar_leaves(child, out);
  }
}

// Open-facet marks for an interior-disjoint family of full-dimensional
// simplicial coordinate cones covering the cone spanned by all rows of
// `coords`: facet j of a piece is open exactly when the global generic point
// lies on its negative side.
std::vector<std::vector<int>> mark_pieces(const std::vector<ZMat>& pieces, const ZMat& coords) {
  int l = static_cast<int>(pieces.empty() ? 0 : pieces[0].size());
  for (int attempt = 0; attempt < 256; ++attempt) {
    QVec q(static_cast<std::size_t>(l), Rational(0));
    Rational weight(1);
    for (const auto& row : coords) {
      for (int k = 0; k < l; ++k) q[static_cast<std::size_t>(k)] += weight * Rational(row[static_cast<std::size_t>(k)]);
      weight *= Rational(attempt + 1);
    }
    bool ok = true;
    std::vector<std::vector<int>> marks(pieces.size());
    for (std::size_t p = 0; p < pieces.size() && ok; ++p) {
      QMat cols(static_cast<std::size_t>(l), QVec(static_cast<std::size_t>(l)));
      for (int r = 0; r < l; ++r)
        for (int j = 0; j < l; ++j) cols[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = Rational(pieces[p][static_cast<std::size_t>(j)][static_cast<std::size_t>(r)]);
      auto lambda = solve(cols, q);
      if (!lambda) {
        ok = false;
        break;
      }
      for (int j = 0; j < l; ++j) {
        const Rational& t = (*lambda)[static_cast<std::size_t>(j)];
        if (t == 0) {
          ok = false;
          break;
        }
        if (t < 0) marks[p].push_back(j);
      }
    }
    if (ok) return marks;
  }
  throw Error("subdivision: could not find a generic marking point");
}

HalfOpenCone assemble_piece(const Cone& parent, const ZMat& coord_rows, const ZMat& basis,
                            const std::vector<int>& open_local) {
  std::vector<std::pair<ZVec, bool>> gens;
  for (std::size_t j = 0; j < coord_rows.size(); ++j) {
    bool open = std::find(open_local.begin(), open_local.end(), static_cast<int>(j)) != open_local.end();
    gens.emplace_back(ambient_from_coords(coord_rows[j], basis, parent.dim), open);
  }
  std::sort(gens.begin(), gens.end());
  HalfOpenCone h;
  h.cone.dim = parent.dim;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    h.cone.generators.push_back(gens[j].first);
    if (gens[j].second) h.open_facets.push_back(static_cast<int>(j));
  }
  return h;
}

std::vector<HalfOpenCone> subdivide(const Cone& c, bool make_unimodular, bool require_simplicial) {
  if (!cone_is_pointed(c)) throw Error("subdivision: cone is not pointed");
  if (c.generators.empty()) return {HalfOpenCone{Cone{c.dim, {}, {}}, {}}};
  if (require_simplicial && !c.is_simplicial()) throw Error("subdivision: cone is not simplicial");
  CoordSetup s = coords_setup(c);
  std::vector<int> all(c.generators.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<std::vector<int>> simplices;
  place_indices(s.coords, all, s.span_dim, simplices);
  std::vector<ZMat> pieces;
  for (const auto& piece : simplices) {
    ZMat rows;
    for (int i : piece) rows.push_back(s.coords[static_cast<std::size_t>(i)]);
    if (make_unimodular)
      stellar_leaves(rows, pieces);
    else
      pieces.push_back(rows);
  }
  std::vector<std::vector<int>> marks = mark_pieces(pieces, s.coords);
  std::vector<HalfOpenCone> out;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    out.push_back(assemble_piece(c, pieces[i], s.basis, marks[i]));
  return out;
}

}  // namespace

std::vector<HalfOpenCone> simplicial_subdivision(const Cone& c) {
  return subdivide(c, /*make_unimodular=*/false, /*require_simplicial=*/false);
}

std::vector<HalfOpenCone> unimodular_subdivision(const Cone& c) {
  return subdivide(c, /*make_unimodular=*/true, /*require_simplicial=*/true);
}

std::vector<HalfOpenCone> unimodular_tiling(const Cone& c) {
  return subdivide(c, /*make_unimodular=*/true, /*require_simplicial=*/false);
}

}  // namespace emk
