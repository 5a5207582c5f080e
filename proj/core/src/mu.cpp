#include "emk/mu.hpp"

namespace emk {

Polynomial MuFunction::sum() const {
  Polynomial out(dim);
  for (const Polynomial& p : components) out += p;
  return out;
}

MuFunction mu_function(const AffineCone& a, const ScalarProduct& q, int order) {
  if (order < 0) throw Error("mu_function: negative order");
  if (!cone_is_pointed(a.cone)) throw Error("mu_function: cone is not pointed");
  q.validate();
  if (q.dim != a.cone.dim) throw Error("mu_function: scalar product dimension mismatch");
  MeromorphicGerm s = lattice_gen_function(a, order);
  MeromorphicGerm shifted =
      MeromorphicGerm::exponential(a.cone.dim, qvec_scale(Rational(-1), a.vertex),
                                   order + s.total_pole_multiplicity()) *
      s;
  MuFunction out;
  out.dim = a.cone.dim;
  out.order = order;
  for (int m = 0; m <= order; ++m)
    out.components.push_back(renormalize(shifted.homogeneous_component(m), q));
  return out;
}

MuFunction mu_function_embedded(const AffineCone& a, const QuotientLattice& lattice,
                                const ScalarProduct& ambient_q, int order) {
  if (order < 0) throw Error("mu_function_embedded: negative order");
  int d = lattice.ambient_dim;
  int qd = lattice.quotient_dim;
  if (a.cone.dim != qd) throw Error("mu_function_embedded: cone does not live in the quotient");
  ambient_q.validate();
  if (ambient_q.dim != d) throw Error("mu_function_embedded: scalar product dimension mismatch");
  MuFunction out;
  out.dim = d;
  out.order = order;
  if (qd == 0) {
    // Quotient by the whole space: mu of the zero cone is the constant 1.
    out.components.assign(static_cast<std::size_t>(order + 1), Polynomial(d));
    out.components[0] = Polynomial::constant(d, Rational(1));
    return out;
  }
  // sigma_i is the unique vector with proj(sigma_i) = e_i that is orthogonal,
  // for ambient_q, to the subspace being divided out.
  int r = static_cast<int>(lattice.mod_basis.size());
  QMat m;
  for (const ZVec& row : lattice.proj) m.push_back(to_qvec(row));
  for (const ZVec& b : lattice.mod_basis) m.push_back(ambient_q.apply(to_qvec(b)));
  std::vector<QVec> sigma;
  for (int i = 0; i < qd; ++i) {
    QVec rhs(static_cast<std::size_t>(qd + r), Rational(0));
    rhs[static_cast<std::size_t>(i)] = Rational(1);
    auto x = solve(m, rhs);
    if (!x) throw Error("mu_function_embedded: degenerate quotient data");
    sigma.push_back(*x);
  }
  ScalarProduct induced;
  induced.dim = qd;
  induced.matrix.assign(static_cast<std::size_t>(qd), QVec(static_cast<std::size_t>(qd)));
  for (int i = 0; i < qd; ++i)
    for (int j = 0; j < qd; ++j)
      induced.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          ambient_q.pair(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(j)]);
  MuFunction inner = mu_function(a, induced, order);
  std::vector<Polynomial> images;
  for (const QVec& s : sigma) images.push_back(Polynomial::linear_form(s));
  for (const Polynomial& comp : inner.components) out.components.push_back(comp.substitute(images));
  return out;
}

LocalExpansion local_euler_maclaurin(const AffineCone& a, const ScalarProduct& q, int order) {
  if (order < 0) throw Error("local_euler_maclaurin: negative order");
  if (!cone_is_pointed(a.cone)) throw Error("local_euler_maclaurin: cone is not pointed");
  q.validate();
  int d = a.cone.dim;
  Polyhedron p = Polyhedron::from_generators(d, QMat{a.vertex}, a.cone.generators, {});
  LocalExpansion out;
  out.direct = lattice_gen_function(a, order);
  MeromorphicGerm sum(d, order);
  int nv = static_cast<int>(p.vertex_points().size());
  for (const Face& f : face_lattice(p)) {
    ZMat face_gens;
    for (int gi : f.gen_indices)
      if (gi >= nv) face_gens.push_back(p.rays()[static_cast<std::size_t>(gi - nv)]);
    AffineCone face_cone{a.vertex, Cone::from_generators(d, face_gens, {})};
    MeromorphicGerm integral = integral_gen_function(face_cone, order);
    int n_i = integral.total_pole_multiplicity();
    TransverseCone tc = transverse_cone(p, f);
    MuFunction mu =
        mu_function_embedded(AffineCone{tc.vertex, tc.cone}, tc.lattice, q, order + n_i);
    sum = sum + MeromorphicGerm::from_polynomial(mu.sum(), order + n_i) * integral;
    out.faces.push_back(FaceTerm{f, std::move(mu), integral});
  }
  out.reconstruction = sum;
  return out;
}

bool local_expansion_matches(const LocalExpansion& e) {
  return (e.reconstruction - e.direct).is_zero();
}

}  // namespace emk
