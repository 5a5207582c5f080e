#include "emk/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace emk {

Polynomial Polynomial::constant(int dim, const Rational& c) {
  Polynomial p(dim);
  p.add_term(Monomial(static_cast<std::size_t>(dim), 0), c);
  return p;
}

Polynomial Polynomial::variable(int dim, int i) {
  if (i < 0 || i >= dim) throw Error("polynomial: variable index out of range");
  Polynomial p(dim);
  Monomial m(static_cast<std::size_t>(dim), 0);
  m[static_cast<std::size_t>(i)] = 1;
  p.add_term(m, 1);
  return p;
}

Polynomial Polynomial::monomial(int dim, const Monomial& exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != dim) throw Error("polynomial: exponent size mismatch");
  Polynomial p(dim);
  p.add_term(exps, c);
  return p;
}

Polynomial Polynomial::linear_form(const QVec& c) {
  Polynomial p(static_cast<int>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Monomial m(c.size(), 0);
    m[i] = 1;
    p.add_term(m, c[i]);
  }
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
  return d;
}

Polynomial Polynomial::homogeneous_part(int m) const {
  Polynomial p(dim_);
  for (const auto& [mono, c] : terms_)
    if (std::accumulate(mono.begin(), mono.end(), 0) == m) p.add_term(mono, c);
  return p;
}

bool Polynomial::is_homogeneous() const {
  int d = -1;
  for (const auto& [mono, c] : terms_) {
    int t = std::accumulate(mono.begin(), mono.end(), 0);
    if (d == -1) d = t;
    else if (t != d) return false;
  }
  return true;
}

Rational Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const {
  return coeff(Monomial(static_cast<std::size_t>(dim_), 0));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  r -= o;
  return r;
}

Polynomial Polynomial::operator-() const { return scale(Rational(-1)); }

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (dim_ != o.dim_ && !o.terms_.empty() && !terms_.empty())
    throw Error("polynomial: dimension mismatch in addition");
  if (terms_.empty()) dim_ = o.dim_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (dim_ != o.dim_ && !o.terms_.empty() && !terms_.empty())
    throw Error("polynomial: dimension mismatch in subtraction");
  if (terms_.empty()) dim_ = o.dim_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (dim_ != o.dim_) throw Error("polynomial: dimension mismatch in multiplication");
  Polynomial r(dim_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(ma.size());
      for (std::size_t i = 0; i < ma.size(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

Polynomial Polynomial::scale(const Rational& c) const {
  Polynomial r(dim_);
  if (c == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_[m] = c * v;
  return r;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw Error("polynomial: negative power");
  Polynomial r = constant(dim_, 1);
  Polynomial b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  return dim_ == o.dim_ && terms_ == o.terms_;
}

Rational Polynomial::eval(const QVec& x) const {
  if (static_cast<int>(x.size()) != dim_) throw Error("polynomial: eval dimension mismatch");
  Rational s(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) t *= rat_pow(x[i], m[i]);
    s += t;
  }
  return s;
}

double Polynomial::eval_double(const std::vector<double>& x) const {
  double s = 0;
  for (const auto& [m, c] : terms_) {
    double t = rat_to_double(c);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int k = 0; k < m[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (static_cast<int>(images.size()) != dim_)
    throw Error("polynomial: substitution image count mismatch");
  int out_dim = images.empty() ? 0 : images[0].dim();
  for (const auto& im : images)
    if (im.dim() != out_dim) throw Error("polynomial: substitution images disagree on dimension");
  Polynomial r(out_dim);
  for (const auto& [m, c] : terms_) {
    Polynomial t = constant(out_dim, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) t = t * images[i].pow(m[i]);
    r += t;
  }
  return r;
}

Polynomial Polynomial::derivative(int i) const {
  if (i < 0 || i >= dim_) throw Error("polynomial: derivative index out of range");
  Polynomial r(dim_);
  for (const auto& [m, c] : terms_) {
    if (m[static_cast<std::size_t>(i)] == 0) continue;
    Monomial d = m;
    int e = d[static_cast<std::size_t>(i)]--;
    r.add_term(d, c * Rational(e));
  }
  return r;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (static_cast<int>(m.size()) != dim_) throw Error("polynomial: monomial size mismatch");
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::string Polynomial::to_string(const std::string& var_prefix) const {
  if (terms_.empty()) return "0";
  // Render highest total degree first (ties: x1 before x2 before ...), so
  // constants come last: "3/2*x1^2*x2 + x3 - 1".
  std::vector<std::pair<Monomial, Rational>> ordered(terms_.begin(), terms_.end());
  auto total = [](const Monomial& m) {
    int t = 0;
    for (int e : m) t += e;
    return t;
  };
  std::sort(ordered.begin(), ordered.end(),
            [&](const auto& a, const auto& b) {
              int ta = total(a.first), tb = total(b.first);
              if (ta != tb) return ta > tb;
              return a.first > b.first;
            });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : ordered) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool has_vars = false;
    std::ostringstream vars;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (has_vars) vars << "*";
      vars << var_prefix << (i + 1);
      if (m[i] > 1) vars << "^" << m[i];
      has_vars = true;
    }
    if (!has_vars) {
      os << rat_to_string(a);
    } else if (a == 1) {
      os << vars.str();
    } else {
      os << rat_to_string(a) << "*" << vars.str();
    }
  }
  return os.str();
}

Polynomial restrict_to_subspace(const Polynomial& p, const QMat& basis_rows) {
  int r = static_cast<int>(basis_rows.size());
  std::vector<Polynomial> images(static_cast<std::size_t>(p.dim()));
  for (int i = 0; i < p.dim(); ++i) {
    QVec c(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k) c[static_cast<std::size_t>(k)] = basis_rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    images[static_cast<std::size_t>(i)] = Polynomial::linear_form(c);
  }
  return p.substitute(images);
}

std::optional<Polynomial> divide_by_linear_form(const Polynomial& p, const QVec& c) {
  int dim = static_cast<int>(c.size());
  if (p.dim() != dim) throw Error("divide_by_linear_form: dimension mismatch");
  int i0 = -1;
  for (int i = 0; i < dim; ++i)
    if (c[static_cast<std::size_t>(i)] != 0) {
      i0 = i;
      break;
    }
  if (i0 == -1) throw Error("divide_by_linear_form: zero form");
  const Rational lead = c[static_cast<std::size_t>(i0)];
  Polynomial divisor = Polynomial::linear_form(c);
  Polynomial q(dim);
  Polynomial r = p;
  // Univariate division in x_{i0}: the divisor has degree one there with a
  // constant leading coefficient, so the loop strictly shrinks the top layer.
  for (;;) {
    const auto& terms = r.terms();
    auto pick = terms.end();
    int top = 0;
    for (auto it = terms.begin(); it != terms.end(); ++it) {
      int e = it->first[static_cast<std::size_t>(i0)];
      if (e > top) {
        top = e;
        pick = it;
      }
    }
    if (pick == terms.end()) break;
    Polynomial::Monomial m = pick->first;
    --m[static_cast<std::size_t>(i0)];
    Polynomial qt = Polynomial::monomial(dim, m, pick->second / lead);
    q += qt;
    r -= qt * divisor;
  }
  if (!r.is_zero()) return std::nullopt;
  return q;
}

Polynomial apply_diff(const Polynomial& op, const Polynomial& h) {
  if (op.dim() != h.dim()) throw Error("apply_diff: dimension mismatch");
  Polynomial out(h.dim());
  for (const auto& [alpha, a] : op.terms()) {
    for (const auto& [beta, b] : h.terms()) {
      Polynomial::Monomial m(beta.size());
      Rational coeff = a * b;
      bool ok = true;
      for (std::size_t i = 0; i < beta.size(); ++i) {
        if (beta[i] < alpha[i]) {
          ok = false;
          break;
        }
        m[i] = beta[i] - alpha[i];
        // d^k x^n = n!/(n-k)! x^(n-k)
        coeff *= Rational(factorial(beta[i]) / factorial(beta[i] - alpha[i]));
      }
      if (ok) out.add_term(m, coeff);
    }
  }
  return out;
}

}  // namespace emk
