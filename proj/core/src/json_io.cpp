#include "emk/json_io.hpp"

#include <cctype>

namespace emk {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error("json: " + what); }

Int int_from_json(const Json& j, const char* where) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    Rational r = rat_from_string(j.get<std::string>());
    if (denominator(r) != 1) bad(std::string(where) + " must be an integer");
    return numerator(r);
  }
  bad(std::string(where) + " must be an integer");
}

}  // namespace

Json rational_json(const Rational& r) { return rat_to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  bad("expected a rational as \"p/q\" string or integer");
}

Json qvec_json(const QVec& v) {
  Json out = Json::array();
  for (const Rational& x : v) out.push_back(rational_json(x));
  return out;
}

Json zvec_json(const ZVec& v) {
  Json out = Json::array();
  for (const Int& x : v) out.push_back(x.convert_to<long long>());
  return out;
}

QVec qvec_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of rationals");
  QVec out;
  for (const Json& x : j) out.push_back(rational_from_json(x));
  return out;
}

ZVec zvec_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of integers");
  ZVec out;
  for (const Json& x : j) out.push_back(int_from_json(x, "vector entry"));
  return out;
}

Polyhedron polyhedron_from_json(const Json& j) {
  if (!j.is_object()) bad("polyhedron must be an object");
  if (!j.contains("dim")) bad("polyhedron needs a \"dim\" field");
  int d = j.at("dim").get<int>();
  if (d < 0) bad("polyhedron dimension must be nonnegative");
  bool has_ineqs = j.contains("inequalities") || j.contains("equalities");
  bool has_gens = j.contains("vertices") || j.contains("rays") || j.contains("lines");
  if (!has_ineqs && !has_gens)
    bad("polyhedron needs \"inequalities\"/\"equalities\" or \"vertices\"/\"rays\"/\"lines\"");
  // Documents emitted by this library carry both descriptions; the generator
  // form is self-contained, so it wins when present.
  if (has_ineqs && !has_gens) {
    QMat a, eq_a;
    QVec b, eq_b;
    auto read_rows = [&](const char* key, QMat& normals, QVec& rhs) {
      if (!j.contains(key)) return;
      const Json& rows = j.at(key);
      if (!rows.is_array()) bad(std::string("\"") + key + "\" must be an array");
      for (const Json& row : rows) {
        if (!row.is_object() || !row.contains("a") || !row.contains("b"))
          bad("constraint rows look like {\"a\": [...], \"b\": ...}");
        QVec normal = qvec_from_json(row.at("a"));
        if (static_cast<int>(normal.size()) != d) bad("constraint normal has the wrong length");
        normals.push_back(std::move(normal));
        rhs.push_back(rational_from_json(row.at("b")));
      }
    };
    read_rows("inequalities", a, b);
    read_rows("equalities", eq_a, eq_b);
    return Polyhedron::from_constraints(d, a, b, eq_a, eq_b);
  }
  QMat vertices;
  if (j.contains("vertices"))
    for (const Json& row : j.at("vertices")) {
      QVec v = qvec_from_json(row);
      if (static_cast<int>(v.size()) != d) bad("vertex has the wrong length");
      vertices.push_back(std::move(v));
    }
  ZMat rays, lines;
  if (j.contains("rays"))
    for (const Json& row : j.at("rays")) {
      ZVec v = zvec_from_json(row);
      if (static_cast<int>(v.size()) != d) bad("ray has the wrong length");
      rays.push_back(std::move(v));
    }
  if (j.contains("lines"))
    for (const Json& row : j.at("lines")) {
      ZVec v = zvec_from_json(row);
      if (static_cast<int>(v.size()) != d) bad("line has the wrong length");
      lines.push_back(std::move(v));
    }
  if (vertices.empty()) bad("generator form needs at least one vertex");
  return Polyhedron::from_generators(d, vertices, rays, lines);
}

Json polyhedron_json(const Polyhedron& p) {
  Json out;
  out["dim"] = p.dim();
  Json ineqs = Json::array();
  for (std::size_t i = 0; i < p.ineq_normals().size(); ++i) {
    Json row;
    row["a"] = zvec_json(p.ineq_normals()[i]);
    row["b"] = rational_json(p.ineq_rhs()[i]);
    ineqs.push_back(std::move(row));
  }
  out["inequalities"] = std::move(ineqs);
  if (!p.eq_normals().empty()) {
    Json eqs = Json::array();
    for (std::size_t i = 0; i < p.eq_normals().size(); ++i) {
      Json row;
      row["a"] = zvec_json(p.eq_normals()[i]);
      row["b"] = rational_json(p.eq_rhs()[i]);
      eqs.push_back(std::move(row));
    }
    out["equalities"] = std::move(eqs);
  }
  Json verts = Json::array();
  for (const QVec& v : p.vertex_points()) verts.push_back(qvec_json(v));
  out["vertices"] = std::move(verts);
  if (!p.rays().empty()) {
    Json rays = Json::array();
    for (const ZVec& v : p.rays()) rays.push_back(zvec_json(v));
    out["rays"] = std::move(rays);
  }
  if (!p.lines().empty()) {
    Json lines = Json::array();
    for (const ZVec& v : p.lines()) lines.push_back(zvec_json(v));
    out["lines"] = std::move(lines);
  }
  return out;
}

ScalarProduct scalar_product_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("matrix"))
    bad("scalar product looks like {\"dim\": d, \"matrix\": [[...], ...]}");
  ScalarProduct q;
  q.dim = j.at("dim").get<int>();
  for (const Json& row : j.at("matrix")) {
    QVec r = qvec_from_json(row);
    if (static_cast<int>(r.size()) != q.dim) bad("scalar product row has the wrong length");
    q.matrix.push_back(std::move(r));
  }
  if (static_cast<int>(q.matrix.size()) != q.dim) bad("scalar product needs dim rows");
  q.validate();
  return q;
}

Polynomial parse_polynomial(const std::string& text, int dim) {
  auto fail = [&](const std::string& why) {
    throw Error("polynomial \"" + text + "\": " + why);
  };
  // Split into signed terms at top-level '+'/'-'.
  std::vector<std::pair<int, std::string>> terms;  // (sign, body)
  int sign = 1;
  std::string cur;
  bool expecting_term = true;  // a '-' here is a sign, not a separator
  for (char ch : text) {
    if (ch == '+' || ch == '-') {
      if (expecting_term) {
        if (ch == '-') sign = -sign;
        continue;
      }
      terms.emplace_back(sign, cur);
      cur.clear();
      sign = ch == '-' ? -1 : 1;
      expecting_term = true;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(ch))) expecting_term = false;
    cur += ch;
  }
  if (!cur.empty()) terms.emplace_back(sign, cur);
  if (terms.empty()) fail("no terms");
  Polynomial out(dim);
  for (const auto& [s, body] : terms) {
    // Split the term at '*'.
    std::vector<std::string> factors;
    std::string f;
    for (char ch : body) {
      if (ch == '*') {
        factors.push_back(f);
        f.clear();
      } else if (!std::isspace(static_cast<unsigned char>(ch))) {
        f += ch;
      }
    }
    factors.push_back(f);
    Rational coeff(s);
    Polynomial::Monomial mono(static_cast<std::size_t>(dim), 0);
    for (const std::string& factor : factors) {
      if (factor.empty()) fail("empty factor");
      if (factor == "one") continue;
      if (factor[0] == 'x') {
        std::size_t caret = factor.find('^');
        std::string idx_text = factor.substr(1, caret == std::string::npos
                                                    ? std::string::npos
                                                    : caret - 1);
        int idx = 0;
        try {
          idx = std::stoi(idx_text);
        } catch (...) {
          fail("bad variable \"" + factor + "\"");
        }
        if (idx < 1 || idx > dim) fail("variable index out of range in \"" + factor + "\"");
        int exp = 1;
        if (caret != std::string::npos) {
          try {
            exp = std::stoi(factor.substr(caret + 1));
          } catch (...) {
            fail("bad exponent in \"" + factor + "\"");
          }
          if (exp < 0) fail("negative exponent in \"" + factor + "\"");
        }
        mono[static_cast<std::size_t>(idx - 1)] += exp;
      } else {
        try {
          coeff *= rat_from_string(factor);
        } catch (const Error&) {
          fail("bad coefficient \"" + factor + "\"");
        }
      }
    }
    out.add_term(mono, coeff);
  }
  return out;
}

Json polynomial_json(const Polynomial& p) {
  Json out;
  out["dim"] = p.dim();
  Json terms = Json::array();
  for (const auto& [mono, c] : p.terms()) {
    Json term;
    term["coeff"] = rational_json(c);
    term["exponents"] = mono;
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  out["text"] = p.to_string();
  return out;
}

Json fraction_json(const HyperFraction& f) {
  Json out;
  out["dim"] = f.dim();
  out["numerator"] = polynomial_json(f.numerator());
  Json poles = Json::array();
  for (const auto& [form, mult] : f.poles()) {
    Json pole;
    pole["form"] = zvec_json(form);
    pole["multiplicity"] = mult;
    poles.push_back(std::move(pole));
  }
  out["poles"] = std::move(poles);
  return out;
}

Json germ_json(const MeromorphicGerm& g) {
  Json out;
  out["dim"] = g.dim();
  out["depth"] = g.depth();
  Json poles = Json::array();
  for (const auto& [form, mult] : g.poles()) {
    Json pole;
    pole["form"] = zvec_json(form);
    pole["multiplicity"] = mult;
    poles.push_back(std::move(pole));
  }
  out["poles"] = std::move(poles);
  Json parts = Json::array();
  const auto& numer = g.numerator_parts();
  for (std::size_t k = 0; k < numer.size(); ++k) {
    if (numer[k].is_zero()) continue;
    Json part;
    part["degree"] = static_cast<int>(k);
    part["polynomial"] = polynomial_json(numer[k]);
    parts.push_back(std::move(part));
  }
  out["numerator_parts"] = std::move(parts);
  return out;
}

Json mu_json(const MuFunction& mu) {
  Json out;
  out["dim"] = mu.dim;
  out["order"] = mu.order;
  Json comps = Json::array();
  for (std::size_t m = 0; m < mu.components.size(); ++m) {
    Json comp;
    comp["degree"] = static_cast<int>(m);
    comp["polynomial"] = polynomial_json(mu.components[m]);
    comps.push_back(std::move(comp));
  }
  out["components"] = std::move(comps);
  return out;
}

}  // namespace emk
