#ifndef EMK_STEPFN_HPP
#define EMK_STEPFN_HPP

// Step polynomials in one variable t: expression trees built from rational
// constants, fractional-part atoms {gamma * t}, sums, and products.  They are
// periodic-polynomial coefficient functions and can be evaluated exactly at
// any rational t.

#include <memory>
#include <vector>

#include "emk/rational.hpp"

namespace emk {

class StepPoly {
 public:
  enum class Kind { Constant, Frac, Sum, Product };

  struct Node {
    Kind kind = Kind::Constant;
    Rational value;  // the constant, or gamma for {gamma * t}
    std::vector<StepPoly> children;
  };

  StepPoly() : node_(std::make_shared<Node>()) {}

  static StepPoly constant(const Rational& c);
  // The atom {gamma * t}.
  static StepPoly frac(const Rational& gamma);
  static StepPoly sum(std::vector<StepPoly> parts);
  static StepPoly product(std::vector<StepPoly> parts);

  StepPoly operator+(const StepPoly& o) const;
  StepPoly operator-(const StepPoly& o) const;
  StepPoly operator*(const StepPoly& o) const;

  Rational eval(const Rational& t) const;
  const Node& node() const { return *node_; }

 private:
  explicit StepPoly(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Rational step_poly_eval(const StepPoly& e, const Rational& t);

}  // namespace emk

#endif  // EMK_STEPFN_HPP
