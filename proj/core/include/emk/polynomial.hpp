#ifndef EMK_POLYNOMIAL_HPP
#define EMK_POLYNOMIAL_HPP

// Sparse multivariate polynomials over the rationals with exact arithmetic,
// plus the operations the rest of the library leans on: substitution,
// restriction to a subspace, exact division by a linear form, and the action
// of constant-coefficient differential operators.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emk/linalg.hpp"
#include "emk/rational.hpp"

namespace emk {

class Polynomial {
 public:
  // Exponent vector; its length always equals dim().
  using Monomial = std::vector<int>;

  Polynomial() = default;
  explicit Polynomial(int dim) : dim_(dim) {}

  static Polynomial constant(int dim, const Rational& c);
  static Polynomial variable(int dim, int i);
  static Polynomial monomial(int dim, const Monomial& exps, const Rational& c);
  // Homogeneous linear polynomial <c, x>.
  static Polynomial linear_form(const QVec& c);

  int dim() const { return dim_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  Polynomial homogeneous_part(int m) const;
  bool is_homogeneous() const;

  Rational coeff(const Monomial& m) const;
  Rational constant_term() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial scale(const Rational& c) const;
  Polynomial pow(int e) const;
  bool operator==(const Polynomial& o) const;

  Rational eval(const QVec& x) const;
  double eval_double(const std::vector<double>& x) const;

  // Replaces variable i by images[i]; the images share an arbitrary common
  // dimension, which becomes the dimension of the result.
  Polynomial substitute(const std::vector<Polynomial>& images) const;

  Polynomial derivative(int i) const;

  // Adds a term (merging and dropping zeros).
  void add_term(const Monomial& m, const Rational& c);

  // Deterministic rendering, e.g. "3/2*x1^2*x2 + x3 - 1".
  std::string to_string(const std::string& var_prefix = "x") const;

 private:
  int dim_ = 0;
  std::map<Monomial, Rational> terms_;
};

// Restriction of p to the subspace spanned by the given rows: substitutes
// x_i -> sum_k basis[k][i] * t_k, yielding a polynomial in t_1..t_r.
Polynomial restrict_to_subspace(const Polynomial& p, const QMat& basis_rows);

// Exact division by the linear form <c, x>: returns q with p = <c,x> * q,
// or nullopt when the division leaves a remainder.
std::optional<Polynomial> divide_by_linear_form(const Polynomial& p, const QVec& c);

// Interprets op (a polynomial in dual variables) as the constant-coefficient
// differential operator op(d/dx1, ..., d/dxn) and applies it to h.
Polynomial apply_diff(const Polynomial& op, const Polynomial& h);

}  // namespace emk

#endif  // EMK_POLYNOMIAL_HPP
