#include "zetalab/kexp/kexp.hpp"

#include <filesystem>
#include <sstream>

#include "../varieties/modpoly.hpp"
#include "zetalab/cyclofield/zech.hpp"
#include "zetalab/error.hpp"
#include "zetalab/json_util.hpp"
#include "zetalab/varieties/points.hpp"

namespace zetalab {

using detail::ModPoly;
using detail::ZPoly;
using Code = ZechField::Code;

KExpClass KExpClass::generator(const VarietySpec& x, const Integer& coef) {
  KExpClass c;
  c.add(coef, x);
  return c;
}

void KExpClass::add(const Integer& coef, const VarietySpec& x) {
  if (coef == 0) return;
  x.validate();
  const std::string key = x.canonical();
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, std::make_pair(coef, x));
    return;
  }
  it->second.first += coef;
  if (it->second.first == 0) terms_.erase(it);
}

std::vector<std::pair<Integer, VarietySpec>> KExpClass::terms() const {
  std::vector<std::pair<Integer, VarietySpec>> out;
  for (const auto& [key, t] : terms_) out.push_back(t);
  return out;
}

KExpClass& KExpClass::operator+=(const KExpClass& o) {
  for (const auto& [key, t] : o.terms_) add(t.first, t.second);
  return *this;
}

KExpClass& KExpClass::operator-=(const KExpClass& o) {
  for (const auto& [key, t] : o.terms_) add(-t.first, t.second);
  return *this;
}

KExpClass operator*(const Integer& n, const KExpClass& c) {
  KExpClass r;
  for (const auto& [key, t] : c.terms_) r.add(n * t.first, t.second);
  return r;
}

bool operator==(const KExpClass& a, const KExpClass& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
    if (i->first != j->first || i->second.first != j->second.first) return false;
  return true;
}

KExpClass kexp_mul(const KExpClass& a, const KExpClass& b) {
  KExpClass r;
  for (const auto& [ca, x] : a.terms())
    for (const auto& [cb, y] : b.terms()) {
      if (x.base_map.has_value() != y.base_map.has_value())
        throw Error(Errc::BaseMismatch, "absolute generator multiplied by a relative one");
      r += KExpClass::generator(x.base_map ? fibered_product(x, y) : product(x, y), ca * cb);
    }
  return r;
}

std::vector<AdditiveCharacter> all_characters(u64 p, unsigned k) {
  const FiniteField fq = build_field(p, k);
  std::vector<AdditiveCharacter> out;
  for (u64 i = 0; i < fq.size(); ++i) out.emplace_back(fq, fq.from_index(i));
  return out;
}

CyclotomicInt realize(const KExpClass& c, const AdditiveCharacter& chi, unsigned m, const CountOptions& opts) {
  CyclotomicInt sum(chi.field().p());
  for (const auto& [coef, x] : c.terms()) sum += exp_sum(x, chi, m, opts) * coef;
  return sum;
}

namespace {

std::string show(const FFElem& e) {
  std::ostringstream os;
  os << e;
  return os.str();
}

template <class V>
std::string show_value(const V& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

AnnihilatorReport annihilator_check(const KExpClass& c, const std::vector<AdditiveCharacter>& chars,
                                    const CountOptions& opts) {
  AnnihilatorReport rep;
  for (const auto& chi : chars) {
    AnnihilatorEntry e;
    e.q = chi.field().size();
    e.twist = show(chi.twist());
    e.value = realize(c, chi, 1, opts);
    e.in_contract = !chi.trivial();
    if (e.in_contract && !e.value.is_zero())
      throw Error(Errc::NonzeroRealization, "q=" + std::to_string(e.q) + " twist " + e.twist + " gives " +
                                                show_value(e.value));
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

u64 MotFunction::expected_size() const {
  u64 n = 1;
  for (unsigned i = 0; i < d; ++i) n *= q();
  return n;
}

std::vector<u64> MotFunction::coords(u64 index) const {
  std::vector<u64> c(d);
  for (unsigned i = d; i-- > 0;) {
    c[i] = index % q();
    index /= q();
  }
  return c;
}

u64 MotFunction::index_of(const std::vector<u64>& coords) const {
  u64 i = 0;
  for (u64 c : coords) i = i * q() + c;
  return i;
}

std::string MotFunction::to_csv() const {
  std::ostringstream os;
  const u64 p = chi.field().p();
  for (unsigned i = 0; i < d; ++i) os << "s" << i << ",";
  const u64 width = p == 2 ? 1 : p - 1;
  for (u64 j = 0; j < width; ++j) os << (j ? "," : "") << "c" << j;
  os << "\n";
  for (u64 i = 0; i < values.size(); ++i) {
    for (u64 c : coords(i)) os << c << ",";
    const auto& cs = values[i].coeffs();
    for (u64 j = 0; j < width; ++j) os << (j ? "," : "") << (j < cs.size() ? cs[j] : Integer(0));
    os << "\n";
  }
  return os.str();
}

namespace {

struct ZechCtx {
  std::shared_ptr<const ZechField> z;
  std::vector<Code> code_of_index;
  Code twist = 0;

  explicit ZechCtx(const AdditiveCharacter& chi) : z(ZechField::get(chi.field().p(), chi.field().k())) {
    const FiniteField& F = chi.field();
    for (u64 i = 0; i < F.size(); ++i) code_of_index.push_back(z->from_elem(F.from_index(i)));
    twist = z->from_elem(chi.twist());
  }
  u64 exponent(Code v) const { return z->trace(z->mul(twist, v)); }
};

unsigned common_base_dim(const KExpClass& c) {
  std::optional<unsigned> d;
  for (const auto& [coef, x] : c.terms()) {
    if (!x.base_map) throw Error(Errc::MissingBaseMap, "generator without a base map: " + x.canonical());
    if (d && *d != x.base_dim()) throw Error(Errc::BaseMismatch, "generators over bases of different dimension");
    d = x.base_dim();
  }
  if (!d) throw Error(Errc::MissingBaseMap, "empty class carries no base");
  return *d;
}

MotFunction table_from_histograms(const AdditiveCharacter& chi, unsigned d, const std::vector<Histogram>& h) {
  MotFunction out{chi, d, {}};
  out.values.reserve(h.size());
  for (const auto& row : h) out.values.push_back(histogram_value(row));
  return out;
}

}  // namespace

MotFunction realize_relative(const KExpClass& c, const AdditiveCharacter& chi, const CountOptions& opts) {
  const unsigned d = common_base_dim(c);
  const ZechCtx ctx(chi);
  const ZechField& z = *ctx.z;
  const u64 p = z.p(), q = z.size();
  u64 size = 1;
  for (unsigned i = 0; i < d; ++i) size *= q;
  std::vector<Histogram> h(size, Histogram(p, Integer(0)));
  for (const auto& [coef, spec] : c.terms()) {
    const VarietySpec x = affine_model(spec);
    const ZPoly f = ZPoly::compile(ModPoly::reduce(x.f, p), z);
    std::vector<ZPoly> u;
    for (const auto& g : *x.base_map) u.push_back(ZPoly::compile(ModPoly::reduce(g, p), z));
    for_each_point(x, z, opts.budget, [&](const std::vector<Code>& pt) {
      u64 idx = 0;
      for (const auto& g : u) idx = idx * q + z.index(g.eval(z, pt.data()));
      h[idx][ctx.exponent(f.eval(z, pt.data()))] += coef;
    });
  }
  return table_from_histograms(chi, d, h);
}

KExpClass fourier_symbolic(const KExpClass& c) {
  KExpClass out;
  for (const auto& [coef, spec] : c.terms()) {
    if (!spec.base_map) throw Error(Errc::MissingBaseMap, "generator without a base map: " + spec.canonical());
    const VarietySpec x = affine_model(spec);
    const unsigned n = x.dim, d = x.base_dim(), N = n + d;
    VarietySpec r = VarietySpec::affine(N);
    for (const auto& g : x.equations) r.equations.push_back(g.embed(N));
    for (const auto& g : x.inequations) r.inequations.push_back(g.embed(N));
    r.f = x.f.embed(N);
    std::vector<Polynomial> y;
    for (unsigned i = 0; i < d; ++i) {
      y.push_back(Polynomial::variable(N, n + i));
      r.f += (*x.base_map)[i].embed(N) * y.back();
    }
    r.base_map = std::move(y);
    out += KExpClass::generator(r, coef);
  }
  return out;
}

namespace {

void require_complete(const MotFunction& psi) {
  if (psi.values.size() != psi.expected_size())
    throw Error(Errc::IncompleteTable, std::to_string(psi.values.size()) + " entries, V(F_q) has " +
                                           std::to_string(psi.expected_size()));
}

/// <s, y> as a Zech code, s and y given by table indices.
Code pairing(const ZechCtx& ctx, const MotFunction& psi, u64 s, u64 y) {
  const auto a = psi.coords(s), b = psi.coords(y);
  Code acc = 0;
  for (unsigned i = 0; i < psi.d; ++i)
    acc = ctx.z->add(acc, ctx.z->mul(ctx.code_of_index[a[i]], ctx.code_of_index[b[i]]));
  return acc;
}

}  // namespace

MotFunction fourier_realized(const MotFunction& psi) {
  require_complete(psi);
  const ZechCtx ctx(psi.chi);
  const u64 p = ctx.z->p(), n = psi.values.size();
  MotFunction out{psi.chi, psi.d, std::vector<CyclotomicInt>(n, CyclotomicInt(p))};
  for (u64 y = 0; y < n; ++y) {
    // Accumulate Psi(s) zeta^e coefficientwise, then reduce once.
    std::vector<Integer> acc(p, Integer(0));
    for (u64 s = 0; s < n; ++s) {
      const auto& v = psi.values[s].coeffs();
      const u64 e = ctx.exponent(pairing(ctx, psi, s, y));
      for (u64 j = 0; j < v.size(); ++j) acc[(j + e) % p] += v[j];
    }
    out.values[y] = CyclotomicInt::from_powers(p, acc);
  }
  return out;
}

MotFunction reflect(const MotFunction& psi) {
  require_complete(psi);
  const ZechCtx ctx(psi.chi);
  MotFunction out(psi);
  for (u64 s = 0; s < psi.values.size(); ++s) {
    auto c = psi.coords(s);
    for (auto& v : c) v = ctx.z->index(ctx.z->neg(ctx.code_of_index[v]));
    out.values[psi.index_of(c)] = psi.values[s];
  }
  return out;
}

MotFunction scale(const MotFunction& psi, const Integer& n) {
  MotFunction out(psi);
  for (auto& v : out.values) v = v * n;
  return out;
}

InversionReport inversion_check(const KExpClass& c, const AdditiveCharacter& chi, const CountOptions& opts) {
  InversionReport rep;
  const MotFunction psi = realize_relative(c, chi, opts);
  const KExpClass fc = fourier_symbolic(c);
  const MotFunction once = realize_relative(fc, chi, opts);
  rep.square_commutes = once == fourier_realized(psi);
  if (!rep.square_commutes) throw Error(Errc::Mismatch, "realize(F c) differs from the transform of realize(c)");
  const MotFunction twice = realize_relative(fourier_symbolic(fc), chi, opts);
  const MotFunction expected = scale(reflect(psi), Integer(static_cast<unsigned long>(psi.expected_size())));
  rep.q = psi.q();
  rep.d = psi.d;
  rep.points = psi.values.size();
  for (u64 s = 0; s < psi.values.size(); ++s)
    if (!(twice.values[s] == expected.values[s])) {
      std::string at;
      for (u64 v : psi.coords(s)) at += (at.empty() ? "(" : ",") + std::to_string(v);
      throw Error(Errc::Mismatch, "at s=" + at + ") lhs " + show_value(twice.values[s]) + " rhs " +
                                      show_value(expected.values[s]));
    }
  rep.linear_base_map = true;
  for (const auto& [coef, x] : c.terms())
    for (const auto& g : *x.base_map) rep.linear_base_map = rep.linear_base_map && g.total_degree() <= 1;
  rep.covering_note = rep.linear_base_map ? "linear base map: fibre over 0 and its complement split the double transform"
                                          : "non-linear base map: covering family not verified";
  return rep;
}

PoissonReport poisson_finite_check(const MotFunction& psi, const std::vector<Polynomial>& h_forms) {
  require_complete(psi);
  for (const auto& g : h_forms)
    if (g.nvars() != psi.d || g.total_degree() > 1 || g.constant_term() != 0)
      throw Error(Errc::NotASubgroup, "'" + g.to_string() + "' is not a linear form in " + std::to_string(psi.d) +
                                          " variables");
  const ZechCtx ctx(psi.chi);
  const ZechField& z = *ctx.z;
  const u64 p = z.p(), n = psi.values.size();
  std::vector<ZPoly> forms;
  for (const auto& g : h_forms) forms.push_back(ZPoly::compile(ModPoly::reduce(g, p), z));
  std::vector<u64> h;
  for (u64 s = 0; s < n; ++s) {
    std::vector<Code> pt;
    for (u64 v : psi.coords(s)) pt.push_back(ctx.code_of_index[v]);
    bool in = true;
    for (const auto& g : forms) in = in && g.eval(z, pt.data()) == 0;
    if (in) h.push_back(s);
  }
  std::vector<u64> perp;
  for (u64 y = 0; y < n; ++y) {
    bool in = true;
    for (u64 s : h) in = in && pairing(ctx, psi, s, y) == 0;
    if (in) perp.push_back(y);
  }
  const MotFunction hat = fourier_realized(psi);
  PoissonReport rep;
  rep.h_size = h.size();
  rep.h_perp_size = perp.size();
  rep.sum_h = CyclotomicInt(p);
  rep.sum_h_perp = CyclotomicInt(p);
  for (u64 s : h) rep.sum_h += psi.values[s];
  for (u64 y : perp) rep.sum_h_perp += hat.values[y];
  if (!(rep.sum_h * Integer(static_cast<unsigned long>(perp.size())) == rep.sum_h_perp))
    throw Error(Errc::Mismatch, "sum over H " + show_value(rep.sum_h) + " times |H-perp| = " +
                                    std::to_string(perp.size()) + " differs from " + show_value(rep.sum_h_perp));
  return rep;
}

std::vector<std::pair<std::string, KExpClass>> relative_corpus(unsigned d) {
  auto over = [d](VarietySpec x, std::vector<std::string> u) {
    u.resize(d, u.back());
    return KExpClass::generator(x.with_base_map(u));
  };
  auto delta = [&](const std::string& s0) { return over(catalog::point(), {s0}); };
  std::vector<std::string> id{"x0", "x1"};
  id.resize(d);
  std::vector<std::pair<std::string, KExpClass>> out;
  out.emplace_back("delta at 1", delta("1"));
  out.emplace_back("delta at 0", delta("0"));
  out.emplace_back("[V, 0] over V", over(catalog::affine_space(d), id));
  out.emplace_back("quadratic phase", over(VarietySpec::affine(d).with_f(d == 1 ? "x0^2" : "x0^2 + x1"), id));
  out.emplace_back("conic", over(catalog::circle_xy(), {"x0", "x1"}));
  out.emplace_back("square map", over(catalog::affine_line_id(), {"x0^2", "x0"}));
  out.emplace_back("Gm with id", over(catalog::gm_id(), {"x0", "2*x0"}));
  out.emplace_back("3 delta_1 - delta_0", Integer(3) * delta("1") - delta("0"));
  return out;
}

nlohmann::json to_json(const KExpClass& c) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [coef, x] : c.terms()) out.push_back({{"coef", integer_json(coef)}, {"spec", to_json(x)}});
  return out;
}

KExpClass kexp_from_json(const nlohmann::json& doc, const std::string& base_dir) {
  if (!doc.is_array()) throw Error(Errc::ParseError, "class file must hold a JSON list");
  KExpClass c;
  for (const auto& t : doc) {
    if (!t.is_object() || !t.contains("coef")) throw Error(Errc::ParseError, "class term needs 'coef'");
    const Integer coef = integer_from_json(t["coef"]);
    if (t.contains("spec"))
      c += KExpClass::generator(spec_from_json(t["spec"]), coef);
    else if (t.contains("spec_ref") && t["spec_ref"].is_string())
      c += KExpClass::generator(load_spec((std::filesystem::path(base_dir) / t["spec_ref"].get<std::string>()).string()),
                                coef);
    else
      throw Error(Errc::ParseError, "class term needs 'spec' or 'spec_ref'");
  }
  return c;
}

}  // namespace zetalab
