#include "emk/numeric.hpp"

#include <cmath>
#include <optional>

#include "emk/parallel.hpp"

namespace emk {

namespace {

double adaptive_segment(const std::function<double(double)>& f, double a, double fa, double b,
                        double fb, double fm, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double coarse = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double fine = left + right;
  if (depth <= 0 || std::abs(fine - coarse) <= 15.0 * tol) return fine + (fine - coarse) / 15.0;
  return adaptive_segment(f, a, fa, m, fm, flm, tol / 2, depth - 1) +
         adaptive_segment(f, m, fm, b, fb, frm, tol / 2, depth - 1);
}

struct Pt {
  double x, y;
};

Pt mid(Pt a, Pt b) { return Pt{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

double tri_area(Pt a, Pt b, Pt c) {
  return 0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

// Degree-2 edge-midpoint rule.
double tri_rule(const std::function<double(double, double)>& f, Pt a, Pt b, Pt c) {
  Pt mab = mid(a, b), mbc = mid(b, c), mca = mid(c, a);
  return tri_area(a, b, c) * (f(mab.x, mab.y) + f(mbc.x, mbc.y) + f(mca.x, mca.y)) / 3.0;
}

double adaptive_triangle(const std::function<double(double, double)>& f, Pt a, Pt b, Pt c,
                         double tol, int depth) {
  Pt mab = mid(a, b), mbc = mid(b, c), mca = mid(c, a);
  double coarse = tri_rule(f, a, b, c);
  double fine = tri_rule(f, a, mab, mca) + tri_rule(f, mab, b, mbc) + tri_rule(f, mca, mbc, c) +
                tri_rule(f, mab, mbc, mca);
  if (depth <= 0 || std::abs(fine - coarse) <= 10.0 * tol) return fine;
  double quarter = tol / 4;
  return adaptive_triangle(f, a, mab, mca, quarter, depth - 1) +
         adaptive_triangle(f, mab, b, mbc, quarter, depth - 1) +
         adaptive_triangle(f, mca, mbc, c, quarter, depth - 1) +
         adaptive_triangle(f, mab, mbc, mca, quarter, depth - 1);
}

std::vector<double> to_doubles(const QVec& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = rat_to_double(v[i]);
  return out;
}

double face_term_integral_numeric(const AsymptoticExpansion& e, std::size_t face_index,
                                  const Polynomial& op, const SmoothFunction& h, double tol) {
  const Polyhedron& p = e.polyhedron;
  const Face& f = e.faces[face_index];
  int d = p.dim();
  std::vector<std::pair<std::vector<int>, double>> op_terms;
  for (const auto& [mono, c] : op.terms()) op_terms.emplace_back(mono, rat_to_double(c));
  auto g = [&](const std::vector<double>& x) {
    double s = 0;
    for (const auto& [mono, c] : op_terms) s += c * h.eval(x, mono);
    return s;
  };
  if (f.dim == 0) return g(to_doubles(f.affine_point));
  if (f.dim > 2) throw Error("numeric face integration supports face dimensions up to 2");
  // Clip the face to the support box: the face's active inequalities become
  // equalities, the box walls join the inequality list.
  QMat a2;
  QVec b2;
  QMat e2;
  QVec c2;
  for (std::size_t r = 0; r < p.ineq_normals().size(); ++r) {
    bool active = std::binary_search(f.active.begin(), f.active.end(), static_cast<int>(r));
    if (active) {
      e2.push_back(to_qvec(p.ineq_normals()[r]));
      c2.push_back(p.ineq_rhs()[r]);
    } else {
      a2.push_back(to_qvec(p.ineq_normals()[r]));
      b2.push_back(p.ineq_rhs()[r]);
    }
  }
  for (std::size_t r = 0; r < p.eq_normals().size(); ++r) {
    e2.push_back(to_qvec(p.eq_normals()[r]));
    c2.push_back(p.eq_rhs()[r]);
  }
  for (int k = 0; k < d; ++k) {
    QVec row(static_cast<std::size_t>(d), Rational(0));
    row[static_cast<std::size_t>(k)] = Rational(1);
    a2.push_back(row);
    b2.push_back(Rational(h.box_hi[static_cast<std::size_t>(k)]));
    QVec neg(static_cast<std::size_t>(d), Rational(0));
    neg[static_cast<std::size_t>(k)] = Rational(-1);
    a2.push_back(neg);
    b2.push_back(Rational(-h.box_lo[static_cast<std::size_t>(k)]));
  }
  Polyhedron clipped;
  try {
    clipped = Polyhedron::from_constraints(d, a2, b2, e2, c2);
  } catch (const Error& err) {
    if (std::string(err.what()).find("empty") != std::string::npos) return 0.0;
    throw;
  }
  if (clipped.poly_dim() < f.dim) return 0.0;
  QVec base = clipped.vertex_points()[0];
  QMat bcols = transpose(to_qmat(f.span_basis));
  QMat ypoints;
  for (const QVec& v : clipped.vertex_points()) {
    auto y = solve(bcols, qvec_sub(v, base));
    if (!y) throw Error("numeric face integration: clipped vertex left the face span");
    ypoints.push_back(*y);
  }
  std::vector<double> x0(static_cast<std::size_t>(d));
  std::vector<std::vector<double>> bdir(f.span_basis.size(), std::vector<double>(d));
  for (std::size_t j = 0; j < f.span_basis.size(); ++j)
    for (int k = 0; k < d; ++k)
      bdir[j][static_cast<std::size_t>(k)] =
          static_cast<double>(f.span_basis[j][static_cast<std::size_t>(k)].convert_to<long long>());
  double total = 0;
  for (const QMat& simplex : triangulate_polytope(ypoints)) {
    const QVec& y0 = simplex[0];
    QMat edges;
    for (std::size_t i = 1; i < simplex.size(); ++i) edges.push_back(qvec_sub(simplex[i], y0));
    Rational vol = det(edges);
    if (vol < 0) vol = -vol;
    if (vol == 0) continue;
    double vold = rat_to_double(vol);
    // x(lambda) = base + B^T (y0 + sum_i lambda_i (y_i - y0))
    for (int k = 0; k < d; ++k) {
      double v = rat_to_double(base[static_cast<std::size_t>(k)]);
      for (std::size_t j = 0; j < bdir.size(); ++j)
        v += bdir[j][static_cast<std::size_t>(k)] * rat_to_double(y0[j]);
      x0[static_cast<std::size_t>(k)] = v;
    }
    std::vector<std::vector<double>> dirs(edges.size(), std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (int k = 0; k < d; ++k) {
        double v = 0;
        for (std::size_t j = 0; j < bdir.size(); ++j)
          v += bdir[j][static_cast<std::size_t>(k)] * rat_to_double(edges[i][j]);
        dirs[i][static_cast<std::size_t>(k)] = v;
      }
    std::vector<double> x(static_cast<std::size_t>(d));
    if (f.dim == 1) {
      auto fn = [&](double l) {
        for (int k = 0; k < d; ++k)
          x[static_cast<std::size_t>(k)] = x0[static_cast<std::size_t>(k)] + l * dirs[0][static_cast<std::size_t>(k)];
        return g(x);
      };
      total += vold * adaptive_segment(fn, 0.0, fn(0.0), 1.0, fn(1.0), fn(0.5), tol, 32);
    } else {
      auto fn = [&](double u, double v) {
        for (int k = 0; k < d; ++k)
          x[static_cast<std::size_t>(k)] = x0[static_cast<std::size_t>(k)] +
                                           u * dirs[0][static_cast<std::size_t>(k)] +
                                           v * dirs[1][static_cast<std::size_t>(k)];
        return g(x);
      };
      total += vold * adaptive_triangle(fn, Pt{0, 0}, Pt{1, 0}, Pt{0, 1}, tol, 24);
    }
  }
  return total;
}

}  // namespace

double evaluate_expansion_numeric(const AsymptoticExpansion& e, const SmoothFunction& h,
                                  const Rational& t, double tol) {
  if (t <= 0) throw Error("evaluate_expansion_numeric: dilation must be positive");
  if (h.dim != e.polyhedron.dim())
    throw Error("evaluate_expansion_numeric: test function dimension mismatch");
  if (static_cast<int>(h.box_lo.size()) != h.dim || static_cast<int>(h.box_hi.size()) != h.dim)
    throw Error("evaluate_expansion_numeric: malformed support box");
  std::vector<std::optional<MuFunction>> mus(e.faces.size());
  if (e.t_class == DilationClass::RationalT) {
    for (const ExpansionTerm& term : e.terms) {
      std::size_t i = static_cast<std::size_t>(term.face_index);
      if (!mus[i])
        mus[i] = mu_at_dilation(e.transversals[i], t, e.q,
                                e.order - e.polyhedron.poly_dim() + e.faces[i].dim);
    }
  }
  double td = rat_to_double(t);
  double out = 0;
  for (const ExpansionTerm& term : e.terms) {
    const Polynomial& op =
        e.t_class == DilationClass::RationalT
            ? mus[static_cast<std::size_t>(term.face_index)]
                  ->components[static_cast<std::size_t>(term.m)]
            : term.op;
    if (op.is_zero()) continue;
    double integral =
        face_term_integral_numeric(e, static_cast<std::size_t>(term.face_index), op, h, tol);
    out += integral * std::pow(td, -term.k);
  }
  return out;
}

NumericRiemannSum riemann_sum_numeric(const Polyhedron& p, const SmoothFunction& h,
                                      const Rational& t) {
  if (t <= 0) throw Error("riemann_sum_numeric: dilation must be positive");
  if (h.dim != p.dim()) throw Error("riemann_sum_numeric: test function dimension mismatch");
  if (static_cast<int>(h.box_lo.size()) != h.dim || static_cast<int>(h.box_hi.size()) != h.dim)
    throw Error("riemann_sum_numeric: malformed support box");
  int d = p.dim();
  if (d == 0) {
    std::vector<int> zero0;
    return NumericRiemannSum{h.eval({}, zero0), 1};
  }
  std::vector<Int> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
  Int cells = 1;
  for (int k = 0; k < d; ++k) {
    lo[static_cast<std::size_t>(k)] = rat_ceil(t * Rational(h.box_lo[static_cast<std::size_t>(k)]));
    hi[static_cast<std::size_t>(k)] = rat_floor(t * Rational(h.box_hi[static_cast<std::size_t>(k)]));
    Int width = hi[static_cast<std::size_t>(k)] - lo[static_cast<std::size_t>(k)] + 1;
    if (width <= 0) return NumericRiemannSum{};
    cells *= width;
  }
  if (cells > 50000000) throw Error("riemann_sum_numeric: enumeration region too large");
  std::size_t slabs = (hi[0] - lo[0] + 1).convert_to<std::size_t>();
  std::vector<double> slab_sum(slabs, 0.0);
  std::vector<long long> slab_count(slabs, 0);
  std::vector<int> zero(static_cast<std::size_t>(d), 0);
  double td = rat_to_double(t);
  parallel_for(slabs, [&](std::size_t slab) {
    std::vector<Int> cur(lo);
    cur[0] = lo[0] + Int(static_cast<long long>(slab));
    QVec x(static_cast<std::size_t>(d));
    std::vector<double> scaled(static_cast<std::size_t>(d));
    while (true) {
      for (int k = 0; k < d; ++k)
        x[static_cast<std::size_t>(k)] = Rational(cur[static_cast<std::size_t>(k)]);
      if (p.contains_dilated(x, t)) {
        for (int k = 0; k < d; ++k)
          scaled[static_cast<std::size_t>(k)] =
              cur[static_cast<std::size_t>(k)].convert_to<double>() / td;
        slab_sum[slab] += h.eval(scaled, zero);
        ++slab_count[slab];
      }
      int pos = d - 1;
      while (pos >= 1) {
        if (++cur[static_cast<std::size_t>(pos)] <= hi[static_cast<std::size_t>(pos)]) break;
        cur[static_cast<std::size_t>(pos)] = lo[static_cast<std::size_t>(pos)];
        --pos;
      }
      if (pos < 1) break;
    }
  });
  NumericRiemannSum out;
  for (std::size_t slab = 0; slab < slabs; ++slab) {
    out.value += slab_sum[slab];
    out.point_count += slab_count[slab];
  }
  out.value /= std::pow(td, p.poly_dim());
  return out;
}

}  // namespace emk
