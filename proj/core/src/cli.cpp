#include "emk/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "emk/asymptotics.hpp"
#include "emk/json_io.hpp"

namespace emk {

namespace {

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const std::exception& ex) {
    throw Error("malformed JSON in " + path + ": " + ex.what());
  }
}

Polyhedron load_polyhedron(const std::string& path) {
  if (path.empty()) throw Error("a --polyhedron file is required");
  Json j = load_json_file(path);
  // Accept a raw polyhedron object or any document that embeds one (e.g. the
  // output of `expand`), so documents round-trip between commands.
  if (j.is_object() && !j.contains("dim") && j.contains("polyhedron")) j = j.at("polyhedron");
  return polyhedron_from_json(j);
}

ScalarProduct load_scalar_product(const std::string& path, int dim) {
  if (path.empty()) return ScalarProduct::identity(dim);
  ScalarProduct q = scalar_product_from_json(load_json_file(path));
  if (q.dim != dim) throw Error("scalar product dimension does not match the polyhedron");
  return q;
}

std::vector<Rational> parse_t_list(const std::vector<std::string>& texts) {
  std::vector<Rational> out;
  for (const std::string& s : texts) {
    Rational t = rat_from_string(s);
    if (t <= 0) throw Error("dilation values must be positive, got " + s);
    out.push_back(t);
  }
  return out;
}

DilationClass parse_mode(const std::string& mode) {
  if (mode == "integer") return DilationClass::IntegerLattice;
  if (mode == "rational-t") return DilationClass::RationalT;
  throw Error("unknown mode \"" + mode + "\" (expected integer or rational-t)");
}

bool is_integer(const Rational& t) { return denominator(t) == 1; }

// The minimal face of a translated pointed cone; validation error otherwise.
Face unique_vertex_face(const Polyhedron& p, const char* command) {
  if (!p.is_pointed())
    throw Error(std::string(command) + ": input has a lineality space; quotient it out first");
  if (p.vertex_points().size() != 1)
    throw Error(std::string(command) +
                ": input must be a translated pointed cone (a unique minimal face)");
  std::vector<Face> faces = face_lattice(p);
  if (faces.empty() || faces[0].dim != 0)
    throw Error(std::string(command) + ": no vertex found");
  return faces[0];
}

Json face_json(const Face& f) {
  Json out;
  out["dim"] = f.dim;
  out["active"] = f.active;
  return out;
}

// ---- command handlers: fill the document, return the exit code ----

int run_mu(const JobSpec& spec, Json& doc) {
  Polyhedron p = load_polyhedron(spec.polyhedron_path);
  ScalarProduct q = load_scalar_product(spec.scalar_product_path, p.dim());
  int order = spec.order < 0 ? p.dim() : spec.order;
  doc["command"] = "mu";
  doc["dim"] = p.dim();
  doc["order"] = order;
  MuFunction mu;
  if (!p.lines().empty()) {
    // Non-pointed input: compute in the quotient by the lineality space and
    // pull back through the q-orthogonal section.
    auto [lattice, projected] = lineality_and_project(p);
    Face f = unique_vertex_face(projected, "mu");
    AffineCone a = supporting_cone(projected, f);
    mu = mu_function_embedded(a, lattice, q, order);
    doc["lineality_dim"] = static_cast<int>(p.lines().size());
  } else {
    Face f = unique_vertex_face(p, "mu");
    AffineCone a = supporting_cone(p, f);
    mu = mu_function(a, q, order);
    doc["lineality_dim"] = 0;
  }
  doc["mu"] = mu_json(mu);
  return kExitOk;
}

int run_expand(const JobSpec& spec, Json& doc) {
  Polyhedron p = load_polyhedron(spec.polyhedron_path);
  ScalarProduct q = load_scalar_product(spec.scalar_product_path, p.dim());
  int order = spec.order < 0 ? p.poly_dim() : spec.order;
  DilationClass cls = parse_mode(spec.mode);
  std::vector<Rational> ts = parse_t_list(spec.t_values);
  if (cls == DilationClass::IntegerLattice)
    for (const Rational& t : ts)
      if (!is_integer(t)) throw Error("integer mode needs integer dilations (use --mode rational-t)");
  AsymptoticExpansion e = expansion_terms(p, q, order, cls);
  doc["command"] = "expand";
  doc["mode"] = spec.mode;
  doc["order"] = order;
  doc["polyhedron"] = polyhedron_json(p);
  Json terms = Json::array();
  for (const ExpansionTerm& term : e.terms) {
    Json row;
    row["k"] = term.k;
    row["face"] = face_json(e.faces[static_cast<std::size_t>(term.face_index)]);
    row["m"] = term.m;
    if (cls == DilationClass::IntegerLattice) row["operator"] = polynomial_json(term.op);
    terms.push_back(std::move(row));
  }
  doc["terms"] = std::move(terms);
  if (cls == DilationClass::RationalT && !ts.empty()) {
    // Operators depend on t through the vertex dilation; list them per t.
    Json per_t = Json::array();
    for (const Rational& t : ts) {
      std::vector<std::optional<MuFunction>> mus(e.faces.size());
      Json rows = Json::array();
      for (std::size_t i = 0; i < e.terms.size(); ++i) {
        const ExpansionTerm& term = e.terms[i];
        std::size_t fi = static_cast<std::size_t>(term.face_index);
        if (!mus[fi])
          mus[fi] = mu_at_dilation(e.transversals[fi], t, q,
                                   order - p.poly_dim() + e.faces[fi].dim);
        Json row;
        row["term"] = static_cast<int>(i);
        row["operator"] = polynomial_json(mus[fi]->components[static_cast<std::size_t>(term.m)]);
        rows.push_back(std::move(row));
      }
      Json entry;
      entry["t"] = rat_to_string(t);
      entry["operators"] = std::move(rows);
      per_t.push_back(std::move(entry));
    }
    doc["operators_at"] = std::move(per_t);
  }
  if (!ts.empty() && p.is_bounded()) {
    Polynomial h = parse_polynomial(spec.test_function, p.dim());
    doc["test_function"] = h.to_string();
    Json values = Json::array();
    std::vector<Rational> base_coeffs;
    if (cls == DilationClass::IntegerLattice) base_coeffs = expansion_coefficients(e, h);
    for (const Rational& t : ts) {
      std::vector<Rational> coeffs = cls == DilationClass::IntegerLattice
                                         ? base_coeffs
                                         : expansion_coefficients_at(e, h, t);
      Rational value(0), power(1);
      Json clist = Json::array();
      for (const Rational& c : coeffs) {
        clist.push_back(rat_to_string(c));
        value += c * power;
        power /= t;
      }
      Json row;
      row["t"] = rat_to_string(t);
      row["coefficients"] = std::move(clist);
      row["value"] = rat_to_string(value);
      values.push_back(std::move(row));
    }
    doc["values"] = std::move(values);
  }
  return kExitOk;
}

int run_verify(const JobSpec& spec, Json& doc) {
  Polyhedron p = load_polyhedron(spec.polyhedron_path);
  if (!p.is_bounded()) throw Error("verify needs a bounded polyhedron");
  ScalarProduct q = load_scalar_product(spec.scalar_product_path, p.dim());
  Polynomial h = parse_polynomial(spec.test_function, p.dim());
  int order = spec.order < 0 ? (h.degree() < 0 ? 0 : h.degree()) + p.poly_dim() : spec.order;
  DilationClass cls = parse_mode(spec.mode);
  std::vector<Rational> ts = parse_t_list(spec.t_values);
  if (ts.empty()) ts = {Rational(1), Rational(2), Rational(3)};
  if (cls == DilationClass::IntegerLattice)
    for (const Rational& t : ts)
      if (!is_integer(t)) throw Error("integer mode needs integer dilations (use --mode rational-t)");
  AsymptoticExpansion e = expansion_terms(p, q, order, cls);
  doc["command"] = "verify";
  doc["mode"] = spec.mode;
  doc["order"] = order;
  doc["test_function"] = h.to_string();
  std::vector<Rational> base_coeffs;
  if (cls == DilationClass::IntegerLattice) base_coeffs = expansion_coefficients(e, h);
  bool all_match = true;
  Json checks = Json::array();
  for (const Rational& t : ts) {
    std::vector<Rational> coeffs = cls == DilationClass::IntegerLattice
                                       ? base_coeffs
                                       : expansion_coefficients_at(e, h, t);
    Rational value(0), power(1);
    for (const Rational& c : coeffs) {
      value += c * power;
      power /= t;
    }
    RiemannSumResult oracle = riemann_sum_oracle(p, h, t);
    bool match = value == oracle.value;
    all_match = all_match && match;
    Json row;
    row["t"] = rat_to_string(t);
    row["expansion"] = rat_to_string(value);
    row["riemann_sum"] = rat_to_string(oracle.value);
    row["lattice_points"] = oracle.point_count;
    row["match"] = match;
    checks.push_back(std::move(row));
  }
  doc["checks"] = std::move(checks);
  doc["all_match"] = all_match;
  return all_match ? kExitOk : kExitMismatch;
}

int run_ehrhart(const JobSpec& spec, Json& doc) {
  Polyhedron p = load_polyhedron(spec.polyhedron_path);
  ScalarProduct q = load_scalar_product(spec.scalar_product_path, p.dim());
  std::vector<Rational> coeffs = ehrhart_polynomial(p, q);
  doc["command"] = "ehrhart";
  doc["dim"] = p.dim();
  doc["degree"] = p.poly_dim();
  Json clist = Json::array();
  for (const Rational& c : coeffs) clist.push_back(rat_to_string(c));
  doc["coefficients"] = std::move(clist);  // leading power of t first
  std::vector<Rational> ts = parse_t_list(spec.t_values);
  bool all_match = true;
  if (!ts.empty()) {
    Polynomial one = Polynomial::constant(p.dim(), Rational(1));
    Json counts = Json::array();
    for (const Rational& t : ts) {
      if (!is_integer(t)) throw Error("ehrhart counts need integer dilations");
      Rational value(0);
      Rational power = rat_pow(t, p.poly_dim());
      for (const Rational& c : coeffs) {
        value += c * power;
        power /= t;
      }
      RiemannSumResult oracle = riemann_sum_oracle(p, one, t);
      bool match = value == Rational(oracle.point_count);
      all_match = all_match && match;
      Json row;
      row["t"] = rat_to_string(t);
      row["polynomial"] = rat_to_string(value);
      row["lattice_points"] = oracle.point_count;
      row["match"] = match;
      counts.push_back(std::move(row));
    }
    doc["counts"] = std::move(counts);
    doc["all_match"] = all_match;
  }
  return all_match ? kExitOk : kExitMismatch;
}

int run_local_eml(const JobSpec& spec, Json& doc) {
  Polyhedron p = load_polyhedron(spec.polyhedron_path);
  ScalarProduct q = load_scalar_product(spec.scalar_product_path, p.dim());
  int order = spec.order < 0 ? p.dim() : spec.order;
  Face f = unique_vertex_face(p, "local-eml");
  AffineCone a = supporting_cone(p, f);
  LocalExpansion le = local_euler_maclaurin(a, q, order);
  bool matches = local_expansion_matches(le);
  doc["command"] = "local-eml";
  doc["dim"] = p.dim();
  doc["order"] = order;
  Json faces = Json::array();
  for (const FaceTerm& term : le.faces) {
    Json row;
    row["face"] = face_json(term.face);
    row["mu"] = mu_json(term.mu);
    row["integral"] = germ_json(term.integral);
    faces.push_back(std::move(row));
  }
  doc["faces"] = std::move(faces);
  doc["reconstruction"] = germ_json(le.reconstruction);
  doc["direct"] = germ_json(le.direct);
  doc["matches"] = matches;
  return matches ? kExitOk : kExitMismatch;
}

// ---- table rendering: indented key/value text, arrays as "-" items ----

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

// Objects carrying a "text" field (polynomials) collapse to that field.
bool collapses(const Json& j) { return j.is_object() && j.contains("text"); }

void render_table(const Json& j, std::ostream& out, const std::string& indent) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_scalar(value)) {
        out << indent << key << ": " << scalar_text(value) << "\n";
      } else if (collapses(value)) {
        out << indent << key << ": " << value.at("text").get<std::string>() << "\n";
      } else if (value.is_array() && std::all_of(value.begin(), value.end(), is_scalar)) {
        out << indent << key << ":";
        for (const Json& x : value) out << " " << scalar_text(x);
        out << "\n";
      } else {
        out << indent << key << ":\n";
        render_table(value, out, indent + "  ");
      }
    }
    return;
  }
  if (j.is_array()) {
    for (const Json& x : j) {
      if (is_scalar(x)) {
        out << indent << "- " << scalar_text(x) << "\n";
      } else if (collapses(x)) {
        out << indent << "- " << x.at("text").get<std::string>() << "\n";
      } else {
        out << indent << "-\n";
        render_table(x, out, indent + "  ");
      }
    }
    return;
  }
  out << indent << scalar_text(j) << "\n";
}

}  // namespace

int run_job(const JobSpec& spec, std::ostream& out, std::ostream& err) {
  Json doc;
  int code;
  try {
    if (spec.format != "json" && spec.format != "table")
      throw Error("unknown format \"" + spec.format + "\"");
    if (spec.command == "mu")
      code = run_mu(spec, doc);
    else if (spec.command == "expand")
      code = run_expand(spec, doc);
    else if (spec.command == "verify")
      code = run_verify(spec, doc);
    else if (spec.command == "ehrhart")
      code = run_ehrhart(spec, doc);
    else if (spec.command == "local-eml")
      code = run_local_eml(spec, doc);
    else
      throw Error("unknown command \"" + spec.command + "\"");
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitValidation;
  }
  std::ostringstream rendered;
  if (spec.format == "json") {
    rendered << doc.dump(2) << "\n";
  } else {
    render_table(doc, rendered, "");
  }
  if (!spec.output_path.empty()) {
    std::ofstream file(spec.output_path);
    if (!file) {
      err << "error: cannot write " << spec.output_path << "\n";
      return kExitValidation;
    }
    file << rendered.str();
  } else {
    out << rendered.str();
  }
  return code;
}

}  // namespace emk
