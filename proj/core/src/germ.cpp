#include "emk/germ.hpp"

#include <algorithm>

#include "emk/bernoulli.hpp"

namespace emk {

MeromorphicGerm::MeromorphicGerm(int dim, int numerator_truncation)
    : dim_(dim), trunc_(numerator_truncation) {
  if (trunc_ < -1) throw Error("germ: negative truncation");
  parts_.assign(static_cast<std::size_t>(trunc_ + 1), Polynomial(dim_));
}

void MeromorphicGerm::accumulate_numerator(const Polynomial& p) {
  if (p.dim() != dim_) throw Error("germ: numerator dimension mismatch");
  for (int k = 0; k <= std::min(trunc_, p.degree()); ++k)
    parts_[static_cast<std::size_t>(k)] += p.homogeneous_part(k);
}

MeromorphicGerm MeromorphicGerm::from_polynomial(const Polynomial& p, int numerator_truncation) {
  MeromorphicGerm g(p.dim(), numerator_truncation);
  g.accumulate_numerator(p);
  return g;
}

MeromorphicGerm MeromorphicGerm::exponential(int dim, const QVec& s, int numerator_truncation) {
  MeromorphicGerm g(dim, numerator_truncation);
  Polynomial form = Polynomial::linear_form(s);
  Polynomial power = Polynomial::constant(dim, Rational(1));
  for (int k = 0; k <= numerator_truncation; ++k) {
    g.parts_[static_cast<std::size_t>(k)] += power.scale(Rational(1) / Rational(factorial(k)));
    if (k < numerator_truncation) power = power * form;
  }
  return g;
}

MeromorphicGerm MeromorphicGerm::one_over_one_minus_exp(int dim, const ZVec& v,
                                                        int numerator_truncation) {
  MeromorphicGerm g(dim, numerator_truncation);
  g.poles_[canonical_direction_z(v).first] = 1;
  Polynomial form = Polynomial::linear_form(to_qvec(v));
  Polynomial power = Polynomial::constant(dim, Rational(1));
  for (int k = 0; k <= numerator_truncation; ++k) {
    g.parts_[static_cast<std::size_t>(k)] +=
        power.scale(-bernoulli(k).number / Rational(factorial(k)));
    if (k < numerator_truncation) power = power * form;
  }
  // The pole form was stored primitive; absorb the scale of v into the
  // numerator: 1/<v,xi> = (1/c) * 1/<prim,xi> with v = c * prim.
  Rational c = canonical_direction_z(v).second;
  for (auto& part : g.parts_) part = part.scale(Rational(1) / c);
  return g;
}

MeromorphicGerm MeromorphicGerm::one_over_linear(int dim, const ZVec& v, int numerator_truncation) {
  if (numerator_truncation < 0) throw Error("germ: pole factory needs truncation >= 0");
  auto [prim, c] = canonical_direction_z(v);
  MeromorphicGerm g(dim, numerator_truncation);
  g.poles_[prim] = 1;
  g.parts_[0] = Polynomial::constant(dim, Rational(1) / c);
  return g;
}

int MeromorphicGerm::total_pole_multiplicity() const {
  int n = 0;
  for (const auto& [v, m] : poles_) n += m;
  return n;
}

bool MeromorphicGerm::is_zero() const {
  for (const auto& p : parts_)
    if (!p.is_zero()) return false;
  return true;
}

MeromorphicGerm MeromorphicGerm::scale(const Rational& c) const {
  MeromorphicGerm g = *this;
  for (auto& p : g.parts_) p = p.scale(c);
  return g;
}

MeromorphicGerm MeromorphicGerm::truncate(int new_truncation) const {
  if (new_truncation >= trunc_) return *this;
  MeromorphicGerm g = *this;
  g.trunc_ = new_truncation;
  g.parts_.resize(static_cast<std::size_t>(new_truncation + 1), Polynomial(dim_));
  return g;
}

MeromorphicGerm MeromorphicGerm::operator+(const MeromorphicGerm& o) const {
  if (dim_ != o.dim_) throw Error("germ: dimension mismatch in addition");
  std::map<ZVec, int> common = poles_;
  for (const auto& [v, m] : o.poles_) {
    auto it = common.find(v);
    if (it == common.end())
      common[v] = m;
    else
      it->second = std::max(it->second, m);
  }
  int n_common = 0;
  for (const auto& [v, m] : common) n_common += m;
  int new_depth = std::min(depth(), o.depth());
  MeromorphicGerm r(dim_, new_depth + n_common);
  r.poles_ = common;
  auto lift = [&](const MeromorphicGerm& g) {
    Polynomial extra = Polynomial::constant(dim_, Rational(1));
    for (const auto& [v, m] : common) {
      auto it = g.poles_.find(v);
      int deficit = m - (it == g.poles_.end() ? 0 : it->second);
      if (deficit > 0) extra = extra * Polynomial::linear_form(to_qvec(v)).pow(deficit);
    }
    int shift = extra.degree();
    for (int k = 0; k + shift <= r.trunc_ && k <= g.trunc_; ++k)
      r.parts_[static_cast<std::size_t>(k + shift)] +=
          g.parts_[static_cast<std::size_t>(k)] * extra;
  };
  lift(*this);
  lift(o);
  return r;
}

MeromorphicGerm MeromorphicGerm::operator-(const MeromorphicGerm& o) const {
  return *this + o.scale(Rational(-1));
}

MeromorphicGerm MeromorphicGerm::operator*(const MeromorphicGerm& o) const {
  if (dim_ != o.dim_) throw Error("germ: dimension mismatch in multiplication");
  int n_a = total_pole_multiplicity();
  int n_b = o.total_pole_multiplicity();
  int new_trunc = std::min(trunc_ + n_b, o.trunc_ + n_a);
  MeromorphicGerm r(dim_, new_trunc);
  r.poles_ = poles_;
  for (const auto& [v, m] : o.poles_) r.poles_[v] += m;
  for (int i = 0; i <= trunc_ && i <= new_trunc; ++i) {
    if (parts_[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j <= o.trunc_ && i + j <= new_trunc; ++j) {
      if (o.parts_[static_cast<std::size_t>(j)].is_zero()) continue;
      r.parts_[static_cast<std::size_t>(i + j)] +=
          parts_[static_cast<std::size_t>(i)] * o.parts_[static_cast<std::size_t>(j)];
    }
  }
  return r;
}

HyperFraction MeromorphicGerm::homogeneous_component(int m) const {
  int n = total_pole_multiplicity();
  if (m < -n) throw Error("germ: homogeneous component below the pole order");
  if (m > depth()) throw Error("germ: homogeneous component beyond the truncation depth");
  std::vector<std::pair<QVec, int>> plist;
  for (const auto& [v, mult] : poles_) plist.emplace_back(to_qvec(v), mult);
  return HyperFraction(dim_, parts_[static_cast<std::size_t>(m + n)], plist);
}

Polynomial renormalize_germ(const MeromorphicGerm& g, const ScalarProduct& q, int order) {
  if (order > g.depth()) throw Error("renormalize_germ: insufficient Taylor depth");
  Polynomial out(g.dim());
  for (int m = 0; m <= order; ++m) out += renormalize(g.homogeneous_component(m), q);
  return out;
}

MeromorphicGerm quotient_residue(const MeromorphicGerm& g, const ZVec& v) {
  auto [prim, c] = canonical_direction_z(v);
  auto it = g.poles_.find(prim);
  if (it == g.poles_.end()) throw Error("quotient_residue: direction is not a pole");
  if (it->second != 1) throw Error("quotient_residue: pole is not simple");
  ZMat w = integer_kernel(ZMat{prim});
  int qdim = static_cast<int>(w.size());
  std::vector<Polynomial> images(static_cast<std::size_t>(g.dim_));
  for (int k = 0; k < g.dim_; ++k) {
    QVec col(static_cast<std::size_t>(qdim));
    for (int i = 0; i < qdim; ++i) col[static_cast<std::size_t>(i)] = Rational(w[i][k]);
    images[static_cast<std::size_t>(k)] = Polynomial::linear_form(col);
  }
  MeromorphicGerm r(qdim, g.trunc_);
  // Multiplying by v = c * prim cancels the simple pole <prim, xi> and scales
  // the numerator by c; each projected pole W u = scale * prim' contributes a
  // division by scale^mult when its form is stored primitive.
  Rational factor = c;
  for (const auto& [u, m] : g.poles_) {
    if (u == prim) continue;
    ZVec ubar = mat_vec_z(w, u);
    if (zvec_is_zero(ubar)) throw Error("quotient_residue: pole collapses in the quotient");
    auto [ubar_prim, scale] = canonical_direction_z(ubar);
    r.poles_[ubar_prim] += m;
    factor /= rat_pow(scale, m);
  }
  for (int k = 0; k <= g.trunc_; ++k)
    r.parts_[static_cast<std::size_t>(k)] +=
        g.parts_[static_cast<std::size_t>(k)].substitute(images).scale(factor);
  return r;
}

}  // namespace emk
