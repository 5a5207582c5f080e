#include "emk/hyperfrac.hpp"

#include <algorithm>
#include <functional>

namespace emk {

// ---- ScalarProduct ----------------------------------------------------------

ScalarProduct ScalarProduct::identity(int d) {
  ScalarProduct q;
  q.dim = d;
  q.matrix = qmat_identity(d);
  return q;
}

void ScalarProduct::validate() const {
  if (dim < 0) throw Error("scalar product: negative dimension");
  if (static_cast<int>(matrix.size()) != dim)
    throw Error("scalar product: matrix size does not match dimension");
  for (const auto& row : matrix)
    if (static_cast<int>(row.size()) != dim)
      throw Error("scalar product: matrix is not square");
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (matrix[i][j] != matrix[j][i]) throw Error("scalar product: matrix is not symmetric");
  // Sylvester's criterion: all leading principal minors positive.
  for (int k = 1; k <= dim; ++k) {
    QMat lead(k, QVec(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lead[i][j] = matrix[i][j];
    if (det(lead) <= 0) throw Error("scalar product: matrix is not positive definite");
  }
}

Rational ScalarProduct::pair(const QVec& a, const QVec& b) const { return dot(a, mat_vec(matrix, b)); }

QVec ScalarProduct::apply(const QVec& a) const { return mat_vec(matrix, a); }

// ---- HyperFraction ----------------------------------------------------------

HyperFraction::HyperFraction(int dim, Polynomial numerator,
                             const std::vector<std::pair<QVec, int>>& poles)
    : dim_(dim), num_(std::move(numerator)) {
  if (num_.dim() != dim_) throw Error("hyperfraction: numerator dimension mismatch");
  Rational factor(1);
  for (const auto& [v, mult] : poles) {
    if (mult == 0) continue;
    if (mult < 0) throw Error("hyperfraction: negative pole multiplicity");
    if (static_cast<int>(v.size()) != dim_) throw Error("hyperfraction: pole dimension mismatch");
    auto [prim, c] = canonical_direction(v);
    factor *= rat_pow(c, mult);
    poles_[prim] += mult;
  }
  num_ = num_.scale(Rational(1) / factor);
  cancel_common_factors();
}

HyperFraction HyperFraction::from_polynomial(Polynomial p) {
  HyperFraction f(p.dim());
  f.num_ = std::move(p);
  return f;
}

int HyperFraction::total_multiplicity() const {
  int n = 0;
  for (const auto& [v, m] : poles_) n += m;
  return n;
}

Polynomial HyperFraction::denominator() const {
  Polynomial d = Polynomial::constant(dim_, Rational(1));
  for (const auto& [v, m] : poles_) d = d * Polynomial::linear_form(to_qvec(v)).pow(m);
  return d;
}

void HyperFraction::cancel_common_factors() {
  if (num_.is_zero()) {
    poles_.clear();
    return;
  }
  for (auto it = poles_.begin(); it != poles_.end();) {
    QVec form = to_qvec(it->first);
    while (it->second > 0) {
      auto quotient = divide_by_linear_form(num_, form);
      if (!quotient) break;
      num_ = std::move(*quotient);
      --it->second;
    }
    it = it->second == 0 ? poles_.erase(it) : std::next(it);
  }
}

HyperFraction HyperFraction::operator+(const HyperFraction& o) const {
  if (dim_ != o.dim_) throw Error("hyperfraction: dimension mismatch in addition");
  std::map<ZVec, int> common = poles_;
  for (const auto& [v, m] : o.poles_) {
    auto it = common.find(v);
    if (it == common.end())
      common[v] = m;
    else
      it->second = std::max(it->second, m);
  }
  auto complement = [&](const std::map<ZVec, int>& own) {
    Polynomial c = Polynomial::constant(dim_, Rational(1));
    for (const auto& [v, m] : common) {
      auto it = own.find(v);
      int deficit = m - (it == own.end() ? 0 : it->second);
      if (deficit > 0) c = c * Polynomial::linear_form(to_qvec(v)).pow(deficit);
    }
    return c;
  };
  Polynomial num = num_ * complement(poles_) + o.num_ * complement(o.poles_);
  std::vector<std::pair<QVec, int>> plist;
  for (const auto& [v, m] : common) plist.emplace_back(to_qvec(v), m);
  return HyperFraction(dim_, std::move(num), plist);
}

HyperFraction HyperFraction::operator-() const {
  HyperFraction r = *this;
  r.num_ = -r.num_;
  return r;
}

HyperFraction HyperFraction::operator-(const HyperFraction& o) const { return *this + (-o); }

HyperFraction HyperFraction::operator*(const HyperFraction& o) const {
  if (dim_ != o.dim_) throw Error("hyperfraction: dimension mismatch in multiplication");
  std::vector<std::pair<QVec, int>> plist;
  for (const auto& [v, m] : poles_) plist.emplace_back(to_qvec(v), m);
  for (const auto& [v, m] : o.poles_) plist.emplace_back(to_qvec(v), m);
  return HyperFraction(dim_, num_ * o.num_, plist);
}

HyperFraction HyperFraction::scale(const Rational& c) const {
  if (c == 0) return HyperFraction(dim_);
  HyperFraction r = *this;
  r.num_ = r.num_.scale(c);
  return r;
}

HyperFraction HyperFraction::mul_poly(const Polynomial& p) const {
  std::vector<std::pair<QVec, int>> plist;
  for (const auto& [v, m] : poles_) plist.emplace_back(to_qvec(v), m);
  return HyperFraction(dim_, num_ * p, plist);
}

Rational HyperFraction::eval(const QVec& x) const {
  Rational d(1);
  for (const auto& [v, m] : poles_) {
    Rational val = dot_zq(v, x);
    if (val == 0) throw Error("hyperfraction: evaluation point lies on a pole hyperplane");
    d *= rat_pow(val, m);
  }
  return num_.eval(x) / d;
}

bool HyperFraction::equals(const HyperFraction& o) const { return (*this - o).is_zero(); }

HyperFraction SubspaceComponent::term() const {
  if (parts.empty()) return HyperFraction();
  HyperFraction s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s = s + parts[i];
  return s;
}

// ---- residue ----------------------------------------------------------------

namespace {

// Rows w_1..w_q spanning a complement lattice, plus the independent vectors
// v_1..v_p; returns the first q rows of the inverse of the matrix whose
// columns are w_1..w_q, v_1..v_p.  Row i is the dual functional eta_i with
// <eta_i, w_j> = delta_ij and <eta_i, v_j> = 0.
QMat dual_functionals(const ZMat& w, const std::vector<ZVec>& v, int dim) {
  QMat m(dim, QVec(dim));
  int q = static_cast<int>(w.size());
  for (int col = 0; col < q; ++col)
    for (int r = 0; r < dim; ++r) m[r][col] = Rational(w[col][r]);
  for (int col = q; col < dim; ++col)
    for (int r = 0; r < dim; ++r) m[r][col] = Rational(v[col - q][r]);
  QMat inv = inverse(m);
  QMat eta(q);
  for (int i = 0; i < q; ++i) eta[i] = inv[i];
  return eta;
}

// Restricts a fraction to the common annihilator of v_1..v_p, in the
// coordinates dual to the rows of w (a basis of a lattice complementary to
// span(v)).  The substitution is xi = sum_i zeta_i eta_i.
HyperFraction restrict_fraction(const HyperFraction& f, const ZMat& w, const std::vector<ZVec>& v) {
  int dim = f.dim();
  int q = static_cast<int>(w.size());
  QMat eta = dual_functionals(w, v, dim);
  std::vector<Polynomial> images(dim);
  for (int k = 0; k < dim; ++k) {
    QVec c(q);
    for (int i = 0; i < q; ++i) c[i] = eta[i][k];
    images[k] = q == 0 ? Polynomial(0) : Polynomial::linear_form(c);
  }
  if (q == 0)
    for (int k = 0; k < dim; ++k) images[k] = Polynomial(0);
  Polynomial num = f.numerator().substitute(images);
  std::vector<std::pair<QVec, int>> plist;
  for (const auto& [u, m] : f.poles()) {
    QVec ubar(q);
    for (int i = 0; i < q; ++i) ubar[i] = dot(to_qvec(u), eta[i]);
    if (qvec_is_zero(ubar)) throw Error("hyperfraction: pole vanishes on restriction subspace");
    plist.emplace_back(ubar, m);
  }
  return HyperFraction(q, std::move(num), plist);
}

}  // namespace

HyperFraction residue(const HyperFraction& f, const QVec& v) {
  if (static_cast<int>(v.size()) != f.dim()) throw Error("residue: direction dimension mismatch");
  auto [prim, c] = canonical_direction(v);
  auto it = f.poles().find(prim);
  if (it == f.poles().end()) throw Error("residue: direction is not a pole");
  if (it->second != 1) throw Error("residue: pole is not simple");
  std::vector<std::pair<QVec, int>> remaining;
  for (const auto& [u, m] : f.poles())
    if (u != prim) remaining.emplace_back(to_qvec(u), m);
  HyperFraction vf(f.dim(), f.numerator().scale(c), remaining);
  // Parametrize the annihilator of v as xi = sum_i zeta_i w_i, with w the
  // canonical basis of the integer points of the annihilator.  This keeps
  // integral pole directions integral.
  ZMat w = integer_kernel(ZMat{prim});
  int q = static_cast<int>(w.size());
  std::vector<Polynomial> images(f.dim());
  for (int k = 0; k < f.dim(); ++k) {
    QVec coeff(q);
    for (int i = 0; i < q; ++i) coeff[i] = Rational(w[i][k]);
    images[k] = q == 0 ? Polynomial(0) : Polynomial::linear_form(coeff);
  }
  Polynomial num = vf.numerator().substitute(images);
  std::vector<std::pair<QVec, int>> plist;
  for (const auto& [u, m] : vf.poles()) {
    QVec ubar(q);
    for (int i = 0; i < q; ++i) ubar[i] = dot(to_qvec(u), to_qvec(w[i]));
    if (qvec_is_zero(ubar)) throw Error("residue: pole vanishes on the annihilator of v");
    plist.emplace_back(ubar, m);
  }
  return HyperFraction(q, std::move(num), plist);
}

// ---- decomposition with simple independent poles ----------------------------

namespace {

ZMat complement_basis(const ScalarProduct& q, const std::vector<ZVec>& v) {
  QMat constraints;
  for (const auto& vec : v) constraints.push_back(q.apply(to_qvec(vec)));
  if (constraints.empty()) return integer_kernel_q(QMat{QVec(q.dim, Rational(0))});
  return integer_kernel_q(constraints);
}

// Scalar product induced on the sublattice spanned by the rows of w:
// the Gram matrix w_i^T Q w_j.
ScalarProduct induced_product(const ScalarProduct& q, const ZMat& w) {
  ScalarProduct g;
  g.dim = static_cast<int>(w.size());
  g.matrix.assign(w.size(), QVec(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) g.matrix[i][j] = q.pair(to_qvec(w[i]), to_qvec(w[j]));
  return g;
}

// Polynomial part (empty-subspace component) of a fraction with simple
// independent poles, by the restriction recursion.
Polynomial polynomial_part_simple(const HyperFraction& f, const ScalarProduct& qq);

std::vector<SubspaceComponent> decompose_simple_impl(const HyperFraction& f,
                                                     const ScalarProduct& qq) {
  std::vector<ZVec> dirs;
  for (const auto& [v, m] : f.poles()) {
    if (m != 1) throw Error("decompose_simple_poles: pole multiplicity exceeds one");
    dirs.push_back(v);
  }
  {
    QMat rows;
    for (const auto& v : dirs) rows.push_back(to_qvec(v));
    if (!rows.empty() && rank(rows) != static_cast<int>(rows.size()))
      throw Error("decompose_simple_poles: pole directions are dependent");
  }
  int s = static_cast<int>(dirs.size());
  std::vector<SubspaceComponent> out;
  HyperFraction rest(f.dim());
  for (unsigned mask = 1; mask < (1u << s); ++mask) {
    std::vector<ZVec> in_j, out_j;
    for (int j = 0; j < s; ++j) ((mask >> j) & 1u ? in_j : out_j).push_back(dirs[j]);
    std::vector<std::pair<QVec, int>> kept;
    for (const auto& u : out_j) kept.emplace_back(to_qvec(u), 1);
    HyperFraction without_j(f.dim(), f.numerator(), kept);
    ZMat w = complement_basis(qq, in_j);
    HyperFraction restricted = restrict_fraction(without_j, w, in_j);
    Polynomial pj = polynomial_part_simple(restricted, induced_product(qq, w));
    // Pull the quotient coordinates back: zeta_i -> <w_i, xi>.
    std::vector<Polynomial> back(pj.dim());
    for (int i = 0; i < pj.dim(); ++i) back[i] = Polynomial::linear_form(to_qvec(w[i]));
    Polynomial ambient =
        pj.dim() == 0 ? Polynomial::constant(f.dim(), pj.constant_term()) : pj.substitute(back);
    std::vector<std::pair<QVec, int>> comp_poles;
    ZMat span_rows;
    for (const auto& u : in_j) {
      comp_poles.emplace_back(to_qvec(u), 1);
      span_rows.push_back(u);
    }
    HyperFraction part(f.dim(), std::move(ambient), comp_poles);
    if (part.is_zero()) continue;
    SubspaceComponent comp;
    comp.subspace = saturate_span(span_rows, f.dim());
    comp.parts.push_back(part);
    rest = rest + part;
    out.push_back(std::move(comp));
  }
  HyperFraction zero_part = f - rest;
  if (!zero_part.is_polynomial())
    throw Error("decompose_simple_poles: residual part is not polynomial");
  if (!zero_part.is_zero()) {
    SubspaceComponent comp;
    comp.parts.push_back(zero_part);
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(), [](const SubspaceComponent& a, const SubspaceComponent& b) {
    if (a.subspace_dim() != b.subspace_dim()) return a.subspace_dim() < b.subspace_dim();
    return a.subspace < b.subspace;
  });
  return out;
}

Polynomial polynomial_part_simple(const HyperFraction& f, const ScalarProduct& qq) {
  if (f.is_polynomial()) return f.numerator();
  auto comps = decompose_simple_impl(f, qq);
  for (const auto& c : comps)
    if (c.subspace_dim() == 0) return c.parts[0].numerator();
  return Polynomial(f.dim());
}

}  // namespace

std::vector<SubspaceComponent> decompose_simple_poles(const HyperFraction& f,
                                                      const ScalarProduct& q) {
  if (q.dim != f.dim()) throw Error("decompose_simple_poles: scalar product dimension mismatch");
  q.validate();
  return decompose_simple_impl(f, q);
}

// ---- general decomposition --------------------------------------------------

namespace {

struct WorkItem {
  Polynomial num;
  std::map<ZVec, int> poles;
};

// Rewrites one dependent-pole fraction as a sum of fractions whose
// denominators move one unit of multiplicity from a pole onto the first pole
// that depends linearly on its predecessors.  Exact identity:
//   1/(u^n prod v_j^{n_j}) = sum_j c_j / (u^{n+1} v_j^{n_j - 1} prod_{k != j} v_k^{n_k})
// whenever u = sum_j c_j v_j.
std::vector<WorkItem> rewrite_dependent(const WorkItem& item, int dep_index,
                                        const std::vector<ZVec>& dirs) {
  const ZVec& u = dirs[dep_index];
  // Lex-first maximal independent subset of the predecessors.
  std::vector<int> subset;
  QMat rows;
  for (int i = 0; i < dep_index; ++i) {
    rows.push_back(to_qvec(dirs[i]));
    if (rank(rows) == static_cast<int>(rows.size()))
      subset.push_back(i);
    else
      rows.pop_back();
  }
  QMat cols(u.size(), QVec(subset.size()));
  for (std::size_t j = 0; j < subset.size(); ++j)
    for (std::size_t r = 0; r < u.size(); ++r) cols[r][j] = Rational(dirs[subset[j]][r]);
  auto coeffs = solve(cols, to_qvec(u));
  if (!coeffs) throw Error("decompose_general: dependent pole has no expansion");
  std::vector<WorkItem> children;
  for (std::size_t j = 0; j < subset.size(); ++j) {
    if ((*coeffs)[j] == 0) continue;
    WorkItem child;
    child.num = item.num.scale((*coeffs)[j]);
    child.poles = item.poles;
    child.poles[u] += 1;
    auto it = child.poles.find(dirs[subset[j]]);
    if (--it->second == 0) child.poles.erase(it);
    children.push_back(std::move(child));
  }
  return children;
}

using EmitFn = std::function<void(const ZMat& key, HyperFraction part)>;

void decompose_independent(const Polynomial& num, const std::map<ZVec, int>& poles,
                           const ScalarProduct& qq, const EmitFn& emit) {
  int dim = num.dim();
  if (poles.empty()) {
    if (!num.is_zero()) emit(ZMat{}, HyperFraction::from_polynomial(num));
    return;
  }
  std::vector<ZVec> dirs;
  std::vector<int> mults;
  for (const auto& [v, m] : poles) {
    dirs.push_back(v);
    mults.push_back(m);
  }
  int p = static_cast<int>(dirs.size());
  ZMat w = complement_basis(qq, dirs);
  int q = static_cast<int>(w.size());
  if (q + p != dim) throw Error("decompose_general: complement dimension mismatch");
  // Adapted coordinates y = T xi with s_i = <w_i, xi>, z_j = <v_j, xi>.
  QMat t(dim, QVec(dim));
  for (int i = 0; i < q; ++i) t[i] = to_qvec(w[i]);
  for (int j = 0; j < p; ++j) t[q + j] = to_qvec(dirs[j]);
  QMat tinv = inverse(t);
  std::vector<Polynomial> to_adapted(dim), to_ambient(dim);
  for (int k = 0; k < dim; ++k) {
    QVec row(dim);
    for (int m = 0; m < dim; ++m) row[m] = tinv[k][m];
    to_adapted[k] = Polynomial::linear_form(row);
  }
  for (int m = 0; m < dim; ++m) to_ambient[m] = Polynomial::linear_form(t[m]);
  Polynomial adapted = num.substitute(to_adapted);
  // Split off the z-free part; every other monomial donates one factor of its
  // smallest z variable.
  Polynomial zfree(dim);
  std::vector<Polynomial> recursed(p, Polynomial(dim));
  for (const auto& [mono, c] : adapted.terms()) {
    int jstar = -1;
    for (int j = 0; j < p; ++j)
      if (mono[static_cast<std::size_t>(q + j)] > 0) {
        jstar = j;
        break;
      }
    if (jstar < 0) {
      zfree.add_term(mono, c);
    } else {
      Polynomial::Monomial reduced = mono;
      --reduced[static_cast<std::size_t>(q + jstar)];
      recursed[static_cast<std::size_t>(jstar)].add_term(reduced, c);
    }
  }
  if (!zfree.is_zero()) {
    Polynomial ambient = zfree.substitute(to_ambient);
    std::vector<std::pair<QVec, int>> plist;
    ZMat span_rows;
    for (int j = 0; j < p; ++j) {
      plist.emplace_back(to_qvec(dirs[j]), mults[j]);
      span_rows.push_back(dirs[j]);
    }
    HyperFraction part(dim, std::move(ambient), plist);
    if (!part.is_zero()) emit(saturate_span(span_rows, dim), std::move(part));
  }
  for (int j = 0; j < p; ++j) {
    if (recursed[static_cast<std::size_t>(j)].is_zero()) continue;
    std::map<ZVec, int> sub = poles;
    auto it = sub.find(dirs[j]);
    if (--it->second == 0) sub.erase(it);
    decompose_independent(recursed[static_cast<std::size_t>(j)].substitute(to_ambient), sub, qq,
                          emit);
  }
}

}  // namespace

std::vector<SubspaceComponent> decompose_general(const HyperFraction& f, const ScalarProduct& q) {
  if (q.dim != f.dim()) throw Error("decompose_general: scalar product dimension mismatch");
  q.validate();
  std::map<ZMat, std::map<std::map<ZVec, int>, Polynomial>> merged;
  EmitFn emit = [&](const ZMat& key, HyperFraction part) {
    auto& slot = merged[key][part.poles()];
    if (slot.dim() == 0 && slot.is_zero()) slot = Polynomial(f.dim());
    slot += part.numerator();
  };
  std::vector<WorkItem> work{{f.numerator(), f.poles()}};
  long steps = 0;
  while (!work.empty()) {
    if (++steps > 200000) throw Error("decompose_general: rewriting did not terminate");
    WorkItem item = std::move(work.back());
    work.pop_back();
    if (item.num.is_zero()) continue;
    std::vector<ZVec> dirs;
    for (const auto& [v, m] : item.poles) dirs.push_back(v);
    int dep_index = -1;
    QMat rows;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      rows.push_back(to_qvec(dirs[i]));
      if (rank(rows) != static_cast<int>(rows.size())) {
        dep_index = static_cast<int>(i);
        break;
      }
    }
    if (dep_index < 0) {
      decompose_independent(item.num, item.poles, q, emit);
    } else {
      for (auto& child : rewrite_dependent(item, dep_index, dirs)) work.push_back(std::move(child));
    }
  }
  std::vector<SubspaceComponent> out;
  for (auto& [key, by_poles] : merged) {
    SubspaceComponent comp;
    comp.subspace = key;
    for (auto& [plist, numsum] : by_poles) {
      std::vector<std::pair<QVec, int>> pl;
      for (const auto& [v, m] : plist) pl.emplace_back(to_qvec(v), m);
      HyperFraction part(f.dim(), numsum, pl);
      if (!part.is_zero()) comp.parts.push_back(std::move(part));
    }
    if (!comp.parts.empty()) out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(), [](const SubspaceComponent& a, const SubspaceComponent& b) {
    if (a.subspace_dim() != b.subspace_dim()) return a.subspace_dim() < b.subspace_dim();
    return a.subspace < b.subspace;
  });
  return out;
}

Polynomial renormalize(const HyperFraction& f, const ScalarProduct& q) {
  for (const auto& comp : decompose_general(f, q))
    if (comp.subspace_dim() == 0) {
      Polynomial sum(f.dim());
      for (const auto& part : comp.parts) sum += part.numerator();
      return sum;
    }
  return Polynomial(f.dim());
}

}  // namespace emk
