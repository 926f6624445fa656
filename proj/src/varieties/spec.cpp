#include "zetalab/varieties/spec.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "zetalab/error.hpp"

namespace zetalab {

using nlohmann::json;

VarietySpec VarietySpec::affine(unsigned dim) {
  VarietySpec s;
  s.ambient = Ambient::Affine;
  s.dim = dim;
  s.f = Polynomial(dim);
  return s;
}

VarietySpec VarietySpec::projective(unsigned dim) {
  VarietySpec s;
  s.ambient = Ambient::Projective;
  s.dim = dim;
  s.f = Polynomial(dim + 1);
  return s;
}

VarietySpec& VarietySpec::equation(std::string_view poly) {
  equations.push_back(parse_polynomial(poly, nvars()));
  return *this;
}

VarietySpec& VarietySpec::inequation(std::string_view poly) {
  inequations.push_back(parse_polynomial(poly, nvars()));
  return *this;
}

VarietySpec& VarietySpec::with_f(std::string_view poly) {
  f = parse_polynomial(poly, nvars());
  return *this;
}

VarietySpec& VarietySpec::with_base_map(const std::vector<std::string>& polys) {
  std::vector<Polynomial> u;
  for (const auto& s : polys) u.push_back(parse_polynomial(s, nvars()));
  base_map = std::move(u);
  return *this;
}

void VarietySpec::validate() const {
  if (!projective()) return;
  for (const auto* list : {&equations, &inequations})
    for (const auto& g : *list)
      if (!g.is_homogeneous()) throw Error(Errc::NonHomogeneous, "projective spec with " + g.to_string());
  if (!f.is_zero()) throw Error(Errc::ProjectiveWithNonzeroF, "f = " + f.to_string() + " on a projective spec");
}

json to_json(const VarietySpec& spec) {
  json doc;
  doc["ambient"] = {{"type", spec.projective() ? "projective" : "affine"}, {"dim", spec.dim}};
  json eqs = json::array(), ineqs = json::array();
  for (const auto& g : spec.equations) eqs.push_back(g.to_string());
  for (const auto& g : spec.inequations) ineqs.push_back(g.to_string());
  doc["equations"] = eqs;
  doc["inequations"] = ineqs;
  doc["f"] = spec.f.to_string();
  if (spec.base_map) {
    json u = json::array();
    for (const auto& g : *spec.base_map) u.push_back(g.to_string());
    doc["base_map"] = u;
  }
  return doc;
}

std::string VarietySpec::canonical() const { return to_json(*this).dump(); }

VarietySpec spec_from_json(const json& doc) {
  try {
    const auto& amb = doc.at("ambient");
    const std::string type = amb.at("type").get<std::string>();
    const auto dim = amb.at("dim").get<unsigned>();
    VarietySpec s;
    if (type == "affine")
      s = VarietySpec::affine(dim);
    else if (type == "projective")
      s = VarietySpec::projective(dim);
    else
      throw Error(Errc::ParseError, "unknown ambient type '" + type + "'");
    if (doc.contains("equations"))
      for (const auto& g : doc.at("equations")) s.equation(g.get<std::string>());
    if (doc.contains("inequations"))
      for (const auto& g : doc.at("inequations")) s.inequation(g.get<std::string>());
    if (doc.contains("f") && !doc.at("f").is_null()) s.with_f(doc.at("f").get<std::string>());
    if (doc.contains("base_map") && !doc.at("base_map").is_null())
      s.with_base_map(doc.at("base_map").get<std::vector<std::string>>());
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("variety spec: ") + e.what());
  }
}

VarietySpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
  return spec_from_json(doc);
}

VarietySpec affine_model(const VarietySpec& x) {
  if (!x.projective()) return x;
  x.validate();
  const unsigned n = x.nvars();
  std::optional<VarietySpec> acc;
  for (unsigned j = n; j-- > 0;) {
    VarietySpec chart = VarietySpec::affine(n);
    chart.equations = x.equations;
    chart.inequations = x.inequations;
    chart.base_map = x.base_map;
    for (unsigned i = 0; i < j; ++i) chart.equations.push_back(Polynomial::variable(n, i));
    chart.equations.push_back(Polynomial::variable(n, j) - Polynomial::constant(n, 1));
    acc = acc ? disjoint_union(chart, *acc) : chart;
  }
  return *acc;
}

VarietySpec product(const VarietySpec& x, const VarietySpec& y) {
  if (x.projective() || y.projective()) return product(affine_model(x), affine_model(y));
  const unsigned n = x.dim + y.dim;
  VarietySpec r = VarietySpec::affine(n);
  for (const auto& g : x.equations) r.equations.push_back(g.embed(n, 0));
  for (const auto& g : y.equations) r.equations.push_back(g.embed(n, x.dim));
  for (const auto& g : x.inequations) r.inequations.push_back(g.embed(n, 0));
  for (const auto& g : y.inequations) r.inequations.push_back(g.embed(n, x.dim));
  r.f = x.f.embed(n, 0) + y.f.embed(n, x.dim);
  if (x.base_map && y.base_map) {
    std::vector<Polynomial> u;
    for (const auto& g : *x.base_map) u.push_back(g.embed(n, 0));
    for (const auto& g : *y.base_map) u.push_back(g.embed(n, x.dim));
    r.base_map = std::move(u);
  }
  return r;
}

VarietySpec fibered_product(const VarietySpec& x, const VarietySpec& y) {
  if (!x.base_map || !y.base_map) throw Error(Errc::MissingBaseMap, "fibered product needs base maps");
  if (x.base_dim() != y.base_dim()) throw Error(Errc::BaseMismatch, "bases of different dimension");
  VarietySpec r = product(x, y);
  const unsigned n = r.dim;
  std::vector<Polynomial> u;
  for (unsigned i = 0; i < x.base_dim(); ++i) {
    r.equations.push_back((*x.base_map)[i].embed(n, 0) - (*y.base_map)[i].embed(n, x.dim));
    u.push_back((*x.base_map)[i].embed(n, 0));
  }
  r.base_map = std::move(u);
  return r;
}

VarietySpec disjoint_union(const VarietySpec& x, const VarietySpec& y) {
  if (x.projective() || y.projective()) return disjoint_union(affine_model(x), affine_model(y));
  const unsigned w = std::max(x.dim, y.dim);
  const unsigned n = w + 1;
  const Polynomial z = Polynomial::variable(n, w);
  const Polynomial one = Polynomial::constant(n, 1);
  const Polynomial zbar = one - z;
  VarietySpec r = VarietySpec::affine(n);
  r.equations.push_back(z * (z - one));
  for (const auto& g : x.equations) r.equations.push_back(zbar * g.embed(n));
  for (const auto& g : y.equations) r.equations.push_back(z * g.embed(n));
  for (unsigned i = x.dim; i < w; ++i) r.equations.push_back(zbar * Polynomial::variable(n, i));
  for (unsigned i = y.dim; i < w; ++i) r.equations.push_back(z * Polynomial::variable(n, i));
  for (const auto& h : x.inequations) r.inequations.push_back(zbar * h.embed(n) + z);
  for (const auto& h : y.inequations) r.inequations.push_back(z * h.embed(n) + zbar);
  r.f = zbar * x.f.embed(n) + z * y.f.embed(n);
  if (x.base_map && y.base_map) {
    if (x.base_dim() != y.base_dim()) throw Error(Errc::BaseMismatch, "bases of different dimension");
    std::vector<Polynomial> u;
    for (unsigned i = 0; i < x.base_dim(); ++i)
      u.push_back(zbar * (*x.base_map)[i].embed(n) + z * (*y.base_map)[i].embed(n));
    r.base_map = std::move(u);
  }
  return r;
}

VarietySpec phi(const VarietySpec& x) {
  if (x.projective()) return phi(affine_model(x));
  const unsigned n = x.dim + 1;
  VarietySpec r = VarietySpec::affine(n);
  for (const auto& g : x.equations) r.equations.push_back(g.embed(n));
  for (const auto& g : x.inequations) r.inequations.push_back(g.embed(n));
  r.f = x.f.embed(n) + Polynomial::variable(n, x.dim);
  if (x.base_map) {
    std::vector<Polynomial> u;
    for (const auto& g : *x.base_map) u.push_back(g.embed(n));
    r.base_map = std::move(u);
  }
  return r;
}

VarietySpec with_equation(VarietySpec x, std::string_view poly) {
  x.equation(poly);
  x.validate();
  return x;
}

VarietySpec with_inequation(VarietySpec x, std::string_view poly) {
  x.inequation(poly);
  x.validate();
  return x;
}

namespace catalog {

VarietySpec point() { return VarietySpec::affine(0); }
VarietySpec affine_space(unsigned n) { return VarietySpec::affine(n); }
VarietySpec affine_line_id() { return VarietySpec::affine(1).with_f("x0"); }
VarietySpec affine_line_square() { return VarietySpec::affine(1).with_f("x0^2"); }
VarietySpec gm() { return VarietySpec::affine(1).inequation("x0"); }
VarietySpec gm_id() { return gm().with_f("x0"); }
VarietySpec projective_space(unsigned n) { return VarietySpec::projective(n); }
VarietySpec circle_xy() { return VarietySpec::affine(2).equation("x0^2 + x1^2 - 1").with_f("x0*x1"); }
VarietySpec torus_sum() { return VarietySpec::affine(2).inequation("x0*x1").with_f("x0 + x1"); }

}  // namespace catalog

}  // namespace zetalab
