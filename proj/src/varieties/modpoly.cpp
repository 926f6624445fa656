#include "modpoly.hpp"

#include "zetalab/error.hpp"

namespace zetalab::detail {

ModPoly ModPoly::reduce(const Polynomial& g, u64 p) {
  ModPoly r;
  r.nvars = g.nvars();
  const auto pp = static_cast<std::int64_t>(p);
  for (const auto& [e, c] : g.terms()) {
    std::int64_t v = c % pp;
    if (v < 0) v += pp;
    if (v != 0) r.terms.emplace(e, static_cast<u64>(v));
  }
  return r;
}

ModPoly ModPoly::constant(unsigned nvars, u64 c) {
  ModPoly r;
  r.nvars = nvars;
  if (c) r.terms.emplace(Exponents(nvars, 0), c);
  return r;
}

bool ModPoly::is_constant() const {
  if (terms.empty()) return true;
  if (terms.size() > 1) return false;
  for (unsigned e : terms.begin()->first)
    if (e) return false;
  return true;
}

u64 ModPoly::constant_term() const {
  auto it = terms.find(Exponents(nvars, 0));
  return it == terms.end() ? 0 : it->second;
}

int ModPoly::degree_in(unsigned v) const {
  int d = -1;
  for (const auto& [e, c] : terms) d = std::max(d, static_cast<int>(e[v]));
  return d;
}

std::vector<unsigned> ModPoly::variables() const {
  std::vector<bool> seen(nvars, false);
  for (const auto& [e, c] : terms)
    for (unsigned i = 0; i < nvars; ++i)
      if (e[i]) seen[i] = true;
  std::vector<unsigned> out;
  for (unsigned i = 0; i < nvars; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

ModPoly ModPoly::substitute(unsigned v, u64 value, u64 p) const {
  ModPoly r;
  r.nvars = nvars;
  for (const auto& [e, c] : terms) {
    u64 t = mulmod(c, powmod(value, e[v], p), p);
    if (t == 0) continue;
    Exponents f = e;
    f[v] = 0;
    u64& slot = r.terms[f];
    slot = addmod(slot, t, p);
    if (slot == 0) r.terms.erase(f);
  }
  return r;
}

ModPoly ModPoly::without_constant() const {
  ModPoly r = *this;
  r.terms.erase(Exponents(nvars, 0));
  return r;
}

FpPoly ModPoly::univariate(unsigned v, u64 p) const {
  std::vector<u64> c;
  for (const auto& [e, coef] : terms) {
    for (unsigned i = 0; i < nvars; ++i)
      if (i != v && e[i]) throw Error(Errc::Usage, "polynomial is not univariate");
    if (c.size() <= e[v]) c.resize(e[v] + 1, 0);
    c[e[v]] = coef;
  }
  return FpPoly(p, c);
}

std::vector<ModPoly> ModPoly::coefficients_in(unsigned v) const {
  const int d = degree_in(v);
  std::vector<ModPoly> out(static_cast<std::size_t>(std::max(d + 1, 0)));
  for (auto& o : out) o.nvars = nvars;
  for (const auto& [e, c] : terms) {
    Exponents f = e;
    f[v] = 0;
    out[e[v]].terms.emplace(f, c);
  }
  return out;
}

ZPoly ZPoly::compile(const ModPoly& g, const ZechField& z) {
  ZPoly r;
  for (const auto& [e, c] : g.terms) {
    Term t;
    t.coef = z.from_int(static_cast<std::int64_t>(c));
    for (unsigned i = 0; i < e.size(); ++i)
      if (e[i]) t.factors.emplace_back(i, e[i]);
    r.terms.push_back(std::move(t));
  }
  return r;
}

}  // namespace zetalab::detail
