#include "emk/asymptotics.hpp"

#include <algorithm>
#include <optional>

#include "emk/bernoulli.hpp"
#include "emk/parallel.hpp"

namespace emk {

// Every face is coned from its lowest-index vertex over the triangulations
// of the subfaces missing that vertex.
std::vector<QMat> triangulate_polytope(const QMat& points) {
  int sdim = static_cast<int>(points[0].size());
  Polyhedron pf = Polyhedron::from_generators(sdim, points, {}, {});
  const QMat& verts = pf.vertex_points();
  std::vector<Face> faces = face_lattice(pf);  // sorted by (dim, active)
  std::vector<std::vector<std::vector<int>>> tri(faces.size());
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    if (f.dim == 0) {
      tri[i] = {{f.gen_indices[0]}};
      continue;
    }
    int apex = f.gen_indices[0];
    for (std::size_t j = 0; j < i; ++j) {
      const Face& g = faces[j];
      if (g.dim != f.dim - 1) continue;
      if (!std::includes(f.gen_indices.begin(), f.gen_indices.end(), g.gen_indices.begin(),
                         g.gen_indices.end()))
        continue;
      if (std::binary_search(g.gen_indices.begin(), g.gen_indices.end(), apex)) continue;
      for (const auto& s : tri[j]) {
        std::vector<int> cell = s;
        cell.push_back(apex);
        tri[i].push_back(std::move(cell));
      }
    }
  }
  std::vector<QMat> out;
  for (const auto& cell : tri.back()) {
    QMat simplex;
    for (int idx : cell) simplex.push_back(verts[static_cast<std::size_t>(idx)]);
    out.push_back(std::move(simplex));
  }
  return out;
}

namespace {

FaceGeometry build_face_geometry(const Polyhedron& p, const Face& f) {
  FaceGeometry geo;
  int nv = static_cast<int>(p.vertex_points().size());
  for (int gi : f.gen_indices)
    if (gi >= nv) return geo;  // incident rays or lines: unbounded face
  geo.bounded = true;
  geo.base = p.vertex_points()[static_cast<std::size_t>(f.gen_indices[0])];
  geo.basis = f.span_basis;
  if (f.dim == 0) return geo;
  QMat bcols = transpose(to_qmat(f.span_basis));
  QMat ypoints;
  for (int gi : f.gen_indices) {
    auto y = solve(bcols, qvec_sub(p.vertex_points()[static_cast<std::size_t>(gi)], geo.base));
    if (!y) throw Error("face integration: vertex outside the face span");
    ypoints.push_back(*y);
  }
  geo.simplices = triangulate_polytope(ypoints);
  return geo;
}

// Integral of a monomial-expanded polynomial over the standard simplex
// {lambda_i >= 0, sum lambda_i <= 1}: each monomial integrates to
// prod(beta_i!) / (q + |beta|)!.
Rational standard_simplex_integral(const Polynomial& g, int q) {
  Rational out(0);
  for (const auto& [mono, c] : g.terms()) {
    Int num = 1;
    int total = 0;
    for (int e : mono) {
      num *= factorial(e);
      total += e;
    }
    out += c * Rational(num) / Rational(factorial(q + total));
  }
  return out;
}

Rational integrate_polynomial(const FaceGeometry& geo, int face_dim, const Polynomial& g) {
  if (!geo.bounded)
    throw Error("face integral: unbounded face (exact integration needs a bounded face)");
  if (g.dim() != static_cast<int>(geo.base.size()))
    throw Error("face integral: dimension mismatch");
  if (face_dim == 0) return g.eval(geo.base);
  int q = face_dim;
  int d = g.dim();
  int rows = static_cast<int>(geo.basis.size());
  Rational total(0);
  for (const QMat& simplex : geo.simplices) {
    const QVec& y0 = simplex[0];
    QMat edges;
    for (std::size_t i = 1; i < simplex.size(); ++i) edges.push_back(qvec_sub(simplex[i], y0));
    Rational vol = det(edges);
    if (vol < 0) vol = -vol;
    if (vol == 0) continue;
    // x(lambda) = base + B^T (y0 + sum_i lambda_i (y_i - y0)), per coordinate.
    std::vector<Polynomial> images;
    for (int k = 0; k < d; ++k) {
      Rational c0 = geo.base[static_cast<std::size_t>(k)];
      for (int j = 0; j < rows; ++j)
        c0 += Rational(geo.basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]) *
              y0[static_cast<std::size_t>(j)];
      Polynomial img = Polynomial::constant(q, c0);
      for (std::size_t i = 1; i < simplex.size(); ++i) {
        Rational ci(0);
        for (int j = 0; j < rows; ++j)
          ci += Rational(geo.basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]) *
                (simplex[i][static_cast<std::size_t>(j)] - y0[static_cast<std::size_t>(j)]);
        if (!(ci == Rational(0))) {
          Polynomial::Monomial mono(static_cast<std::size_t>(q), 0);
          mono[i - 1] = 1;
          img += Polynomial::monomial(q, mono, ci);
        }
      }
      images.push_back(std::move(img));
    }
    total += standard_simplex_integral(g.substitute(images), q) * vol;
  }
  return total;
}

int face_mu_order(const AsymptoticExpansion& e, std::size_t face_index) {
  return e.order - e.polyhedron.poly_dim() + e.faces[face_index].dim;
}

std::vector<Rational> coefficients_impl(const AsymptoticExpansion& e, const Polynomial& h,
                                        const Rational* t) {
  if (h.dim() != e.polyhedron.dim())
    throw Error("expansion: test function dimension mismatch");
  bernoulli(e.order + 2 * e.polyhedron.dim() + 4);  // warm the shared cache
  std::vector<std::optional<MuFunction>> mus(e.faces.size());
  if (t != nullptr) {
    std::vector<char> needed(e.faces.size(), 0);
    for (const ExpansionTerm& term : e.terms) needed[static_cast<std::size_t>(term.face_index)] = 1;
    parallel_for(e.faces.size(), [&](std::size_t i) {
      if (!needed[i]) return;
      mus[i] = mu_at_dilation(e.transversals[i], *t, e.q, face_mu_order(e, i));
    });
  }
  std::vector<std::vector<Rational>> partial(
      e.terms.size(), std::vector<Rational>(static_cast<std::size_t>(e.order + 1), Rational(0)));
  parallel_for(e.terms.size(), [&](std::size_t i) {
    const ExpansionTerm& term = e.terms[i];
    const Polynomial& op =
        t == nullptr ? term.op
                     : mus[static_cast<std::size_t>(term.face_index)]
                           ->components[static_cast<std::size_t>(term.m)];
    if (op.is_zero()) return;
    Polynomial g = apply_diff(op, h);
    if (g.is_zero()) return;
    partial[i][static_cast<std::size_t>(term.k)] = integrate_polynomial(
        e.geometry[static_cast<std::size_t>(term.face_index)],
        e.faces[static_cast<std::size_t>(term.face_index)].dim, g);
  });
  std::vector<Rational> out(static_cast<std::size_t>(e.order + 1), Rational(0));
  for (const auto& row : partial)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += row[k];
  return out;
}

}  // namespace

AsymptoticExpansion expansion_terms(const Polyhedron& p, const ScalarProduct& q, int order,
                                    DilationClass t_class) {
  if (order < 0) throw Error("expansion_terms: negative order");
  q.validate();
  if (q.dim != p.dim()) throw Error("expansion_terms: scalar product dimension mismatch");
  if (t_class == DilationClass::IntegerLattice && !p.is_lattice())
    throw Error("expansion_terms: integer-lattice mode requires a lattice polyhedron");
  AsymptoticExpansion e;
  e.polyhedron = p;
  e.q = q;
  e.order = order;
  e.t_class = t_class;
  e.faces = face_lattice(p);
  e.transversals.resize(e.faces.size());
  e.geometry.resize(e.faces.size());
  bernoulli(order + 2 * p.dim() + 4);  // warm the shared cache before threading
  parallel_for(e.faces.size(), [&](std::size_t i) {
    e.transversals[i] = transverse_cone(p, e.faces[i]);
    e.geometry[i] = build_face_geometry(p, e.faces[i]);
  });
  int l = p.poly_dim();
  std::vector<std::vector<ExpansionTerm>> per_face(e.faces.size());
  parallel_for(e.faces.size(), [&](std::size_t i) {
    const Face& f = e.faces[i];
    int mmax = order - l + f.dim;
    if (mmax < 0) return;
    std::optional<MuFunction> mu;
    if (t_class == DilationClass::IntegerLattice) {
      const TransverseCone& tc = e.transversals[i];
      mu = mu_function_embedded(AffineCone{tc.vertex, tc.cone}, tc.lattice, q, mmax);
    }
    for (int m = 0; m <= mmax; ++m) {
      ExpansionTerm term;
      term.k = m + l - f.dim;
      term.face_index = static_cast<int>(i);
      term.m = m;
      if (mu) {
        term.op = mu->components[static_cast<std::size_t>(m)];
        if (term.op.is_zero()) continue;  // vanishing symbol contributes nothing
      }
      per_face[i].push_back(std::move(term));
    }
  });
  for (auto& list : per_face)
    for (auto& term : list) e.terms.push_back(std::move(term));
  std::sort(e.terms.begin(), e.terms.end(), [&](const ExpansionTerm& a, const ExpansionTerm& b) {
    if (a.k != b.k) return a.k < b.k;
    const auto& fa = e.faces[static_cast<std::size_t>(a.face_index)].active;
    const auto& fb = e.faces[static_cast<std::size_t>(b.face_index)].active;
    if (fa != fb) return fa < fb;
    return a.m < b.m;
  });
  return e;
}

MuFunction mu_at_dilation(const TransverseCone& tc, const Rational& t, const ScalarProduct& q,
                          int order) {
  if (t <= 0) throw Error("mu_at_dilation: dilation must be positive");
  return mu_function_embedded(AffineCone{qvec_scale(t, tc.vertex), tc.cone}, tc.lattice, q, order);
}

Rational face_integral(const Polyhedron& p, const Face& f, const Polynomial& g) {
  return integrate_polynomial(build_face_geometry(p, f), f.dim, g);
}

std::vector<Rational> expansion_coefficients(const AsymptoticExpansion& e, const Polynomial& h) {
  if (e.t_class != DilationClass::IntegerLattice)
    throw Error("expansion_coefficients: rational-t coefficients depend on t");
  return coefficients_impl(e, h, nullptr);
}

std::vector<Rational> expansion_coefficients_at(const AsymptoticExpansion& e, const Polynomial& h,
                                                const Rational& t) {
  if (t <= 0) throw Error("expansion: dilation must be positive");
  if (e.t_class == DilationClass::IntegerLattice) return coefficients_impl(e, h, nullptr);
  return coefficients_impl(e, h, &t);
}

Rational evaluate_expansion(const AsymptoticExpansion& e, const Polynomial& h, const Rational& t) {
  if (t <= 0) throw Error("evaluate_expansion: dilation must be positive");
  std::vector<Rational> coeffs = expansion_coefficients_at(e, h, t);
  Rational out(0);
  Rational power(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    out += coeffs[k] * power;
    power /= t;
  }
  return out;
}

RiemannSumResult riemann_sum_oracle(const Polyhedron& p, const Polynomial& h, const Rational& t) {
  if (t <= 0) throw Error("riemann_sum_oracle: dilation must be positive");
  if (h.dim() != p.dim()) throw Error("riemann_sum_oracle: test function dimension mismatch");
  if (!p.is_bounded()) throw Error("riemann_sum_oracle: unbounded effective region");
  int d = p.dim();
  const QMat& verts = p.vertex_points();
  if (verts.empty()) throw Error("riemann_sum_oracle: empty polyhedron");
  if (d == 0) return RiemannSumResult{t, h.eval(QVec{}), 1};
  std::vector<Int> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
  bool empty_box = false;
  Int cells = 1;
  for (int k = 0; k < d; ++k) {
    Rational mn = t * verts[0][static_cast<std::size_t>(k)];
    Rational mx = mn;
    for (const QVec& v : verts) {
      Rational val = t * v[static_cast<std::size_t>(k)];
      if (val < mn) mn = val;
      if (val > mx) mx = val;
    }
    lo[static_cast<std::size_t>(k)] = rat_ceil(mn);
    hi[static_cast<std::size_t>(k)] = rat_floor(mx);
    Int width = hi[static_cast<std::size_t>(k)] - lo[static_cast<std::size_t>(k)] + 1;
    if (width <= 0) empty_box = true;
    cells *= width < 0 ? Int(0) : width;
  }
  RiemannSumResult result;
  result.t = t;
  result.value = Rational(0);
  if (empty_box) return result;
  if (cells > 50000000) throw Error("riemann_sum_oracle: enumeration region too large");
  std::size_t slabs = (hi[0] - lo[0] + 1).convert_to<std::size_t>();
  std::vector<Rational> slab_sum(slabs, Rational(0));
  std::vector<long long> slab_count(slabs, 0);
  parallel_for(slabs, [&](std::size_t slab) {
    QVec x(static_cast<std::size_t>(d));
    std::vector<Int> cur(lo);
    cur[0] = lo[0] + Int(static_cast<long long>(slab));
    while (true) {
      for (int k = 0; k < d; ++k)
        x[static_cast<std::size_t>(k)] = Rational(cur[static_cast<std::size_t>(k)]);
      if (p.contains_dilated(x, t)) {
        QVec scaled(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) scaled[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] / t;
        slab_sum[slab] += h.eval(scaled);
        ++slab_count[slab];
      }
      int pos = d - 1;  // advance odometer over coordinates 1..d-1
      while (pos >= 1) {
        if (++cur[static_cast<std::size_t>(pos)] <= hi[static_cast<std::size_t>(pos)]) break;
        cur[static_cast<std::size_t>(pos)] = lo[static_cast<std::size_t>(pos)];
        --pos;
      }
      if (pos < 1) break;
    }
  });
  Rational total(0);
  long long count = 0;
  for (std::size_t slab = 0; slab < slabs; ++slab) {
    total += slab_sum[slab];
    count += slab_count[slab];
  }
  result.value = total / rat_pow(t, p.poly_dim());
  result.point_count = count;
  return result;
}

std::vector<Rational> ehrhart_polynomial(const Polyhedron& p, const ScalarProduct& q) {
  if (!p.is_bounded()) throw Error("ehrhart_polynomial: polyhedron must be bounded");
  AsymptoticExpansion e = expansion_terms(p, q, p.poly_dim(), DilationClass::IntegerLattice);
  return expansion_coefficients(e, Polynomial::constant(p.dim(), Rational(1)));
}

Dim1EulerMaclaurin dim1_euler_maclaurin(const Rational& s, const Rational& upper,
                                        const Polynomial& h, const Rational& t, int n) {
  if (n < 1) throw Error("dim1_euler_maclaurin: order must be at least 1");
  if (t <= 0) throw Error("dim1_euler_maclaurin: dilation must be positive");
  if (h.dim() != 1) throw Error("dim1_euler_maclaurin: test function must be one-dimensional");
  if (upper < s) throw Error("dim1_euler_maclaurin: empty window");
  Rational alpha = t * s;
  Rational beta = t * upper;
  // g(y) = h(y/t) / t, so that sum_{y in [alpha,beta] ∩ Z} g(y) is the
  // Riemann sum of h over t[s, upper].
  Polynomial g =
      h.substitute({Polynomial::variable(1, 0).scale(Rational(1) / t)}).scale(Rational(1) / t);
  auto eval_at = [](const Polynomial& f, const Rational& x) { return f.eval(QVec{x}); };
  auto antiderivative = [](const Polynomial& f) {
    Polynomial out(1);
    for (const auto& [mono, c] : f.terms())
      out.add_term({mono[0] + 1}, c / Rational(mono[0] + 1));
    return out;
  };
  Dim1EulerMaclaurin result;
  // Riemann sum by direct enumeration.
  Int first = rat_ceil(alpha);
  Int last = rat_floor(beta);
  if (last - first > 10000000) throw Error("dim1_euler_maclaurin: window too large");
  Rational rs(0);
  for (Int y = first; y <= last; ++y) rs += eval_at(g, Rational(y));
  result.riemann_sum = rs;
  // Expansion: integral plus endpoint corrections.
  Polynomial big_g = antiderivative(g);
  Rational expansion = eval_at(big_g, beta) - eval_at(big_g, alpha);
  Rational b1_beta = frac_part(beta) - Rational(1, 2);     // B_1({beta})
  Rational b1_alpha = frac_part(-alpha) - Rational(1, 2);  // B_1({-alpha})
  expansion -= b1_beta * eval_at(g, beta);
  expansion -= b1_alpha * eval_at(g, alpha);
  Polynomial deriv = g;
  for (int k = 2; k <= n; ++k) {
    deriv = deriv.derivative(0);  // g^{(k-1)}
    const Polynomial& bk = bernoulli(k).polynomial;
    Rational term = eval_at(bk, frac_part(-beta)) * eval_at(deriv, beta) -
                    eval_at(bk, frac_part(-alpha)) * eval_at(deriv, alpha);
    expansion += term / Rational(factorial(k));
  }
  result.expansion = expansion;
  // Remainder: -(1/n!) * int_alpha^beta g^(n)(y) B_n({-y}) dy, exactly,
  // interval by interval ({-y} = m + 1 - y on (m, m+1)).
  Polynomial gn = g;
  for (int k = 0; k < n; ++k) gn = gn.derivative(0);
  Rational remainder(0);
  if (!gn.is_zero() && beta > alpha) {
    const Polynomial& bn = bernoulli(n).polynomial;
    for (Int m = rat_floor(alpha); m < beta; ++m) {
      Rational a0 = alpha > Rational(m) ? alpha : Rational(m);
      Rational b0 = beta < Rational(m + 1) ? beta : Rational(m + 1);
      if (!(a0 < b0)) continue;
      Polynomial kernel = bn.substitute(
          {Polynomial::constant(1, Rational(m + 1)) - Polynomial::variable(1, 0)});
      Polynomial prim = antiderivative(gn * kernel);
      remainder += eval_at(prim, b0) - eval_at(prim, a0);
    }
    remainder = -remainder / Rational(factorial(n));
  }
  result.remainder = remainder;
  return result;
}

StepPoly dim1_mu_symbolic(const Rational& s, int direction, int m) {
  if (direction != 1 && direction != -1) throw Error("dim1_mu_symbolic: direction must be +1 or -1");
  if (m < 0) throw Error("dim1_mu_symbolic: negative degree");
  // mu_[m]( t(s + R_{>=0} dir) )(xi) = -dir^m B_{m+1}({-dir s t}) / (m+1)! xi^m.
  Rational gamma = Rational(-direction) * s;
  const Polynomial& b = bernoulli(m + 1).polynomial;
  StepPoly atom = StepPoly::frac(gamma);
  StepPoly acc = StepPoly::constant(Rational(0));
  StepPoly power = StepPoly::constant(Rational(1));
  for (int j = 0; j <= b.degree(); ++j) {
    Rational cj = b.coeff({j});
    if (!(cj == Rational(0))) acc = acc + power * StepPoly::constant(cj);
    power = power * atom;
  }
  Rational dir_pow = (direction == -1 && m % 2 == 1) ? Rational(-1) : Rational(1);
  return acc * StepPoly::constant(-dir_pow / Rational(factorial(m + 1)));
}

}  // namespace emk
