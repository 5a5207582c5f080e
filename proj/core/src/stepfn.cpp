#include "emk/stepfn.hpp"

namespace emk {

StepPoly StepPoly::constant(const Rational& c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = c;
  return StepPoly(std::move(n));
}

StepPoly StepPoly::frac(const Rational& gamma) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Frac;
  n->value = gamma;
  return StepPoly(std::move(n));
}

StepPoly StepPoly::sum(std::vector<StepPoly> parts) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->children = std::move(parts);
  return StepPoly(std::move(n));
}

StepPoly StepPoly::product(std::vector<StepPoly> parts) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->children = std::move(parts);
  return StepPoly(std::move(n));
}

StepPoly StepPoly::operator+(const StepPoly& o) const { return sum({*this, o}); }

StepPoly StepPoly::operator-(const StepPoly& o) const {
  return sum({*this, product({constant(-1), o})});
}

StepPoly StepPoly::operator*(const StepPoly& o) const { return product({*this, o}); }

Rational StepPoly::eval(const Rational& t) const {
  switch (node_->kind) {
    case Kind::Constant:
      return node_->value;
    case Kind::Frac:
      return frac_part(node_->value * t);
    case Kind::Sum: {
      Rational s(0);
      for (const auto& c : node_->children) s += c.eval(t);
      return s;
    }
    case Kind::Product: {
      Rational p(1);
      for (const auto& c : node_->children) p *= c.eval(t);
      return p;
    }
  }
  throw Error("step polynomial: corrupt node");
}

Rational step_poly_eval(const StepPoly& e, const Rational& t) { return e.eval(t); }

}  // namespace emk
