#include "zetalab/scissor/scissor.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "../varieties/modpoly.hpp"
#include "zetalab/cyclofield/character.hpp"
#include "zetalab/json_util.hpp"
#include "zetalab/varieties/counting.hpp"
#include "zetalab/varieties/points.hpp"

namespace zetalab {

using detail::ModPoly;
using detail::ZPoly;
using Code = ZechField::Code;

std::string Realization::tag() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::PointCount: os << "point-count(q=" << build_field(p, k).size() << ",m=" << m << ")"; break;
    case Kind::ExpSum: os << "exp-sum(q=" << build_field(p, k).size() << ",m=" << m << ")"; break;
    case Kind::HeightCount: os << "height-count(B=" << bound << ",O(" << height_degree << "))"; break;
  }
  return os.str();
}

bool all_pass(const std::vector<RealizationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const RealizationReport& r) { return r.pass; });
}

VarietySpec intersection(const VarietySpec& a, const VarietySpec& b) {
  if (a.ambient != b.ambient || a.nvars() != b.nvars())
    throw Error(Errc::Mismatch, "specs live in different ambient spaces");
  VarietySpec r(a);
  r.equations.insert(r.equations.end(), b.equations.begin(), b.equations.end());
  r.inequations.insert(r.inequations.end(), b.inequations.begin(), b.inequations.end());
  return r;
}

std::vector<VarietySpec> difference_pieces(const VarietySpec& a, const VarietySpec& b) {
  if (a.ambient != b.ambient || a.nvars() != b.nvars())
    throw Error(Errc::Mismatch, "specs live in different ambient spaces");
  std::vector<VarietySpec> out;
  VarietySpec base(a);
  for (const auto& g : b.equations) {
    VarietySpec piece(base);
    piece.inequations.push_back(g);
    out.push_back(std::move(piece));
    base.equations.push_back(g);
  }
  for (const auto& h : b.inequations) {
    VarietySpec piece(base);
    piece.equations.push_back(h);
    out.push_back(std::move(piece));
    base.inequations.push_back(h);
  }
  return out;
}

namespace {

struct Membership {
  std::vector<ZPoly> eqs, ineqs;

  Membership(const VarietySpec& x, const ZechField& z) {
    for (const auto& g : x.equations) eqs.push_back(ZPoly::compile(ModPoly::reduce(g, z.p()), z));
    for (const auto& h : x.inequations) ineqs.push_back(ZPoly::compile(ModPoly::reduce(h, z.p()), z));
  }
  bool contains(const ZechField& z, const Code* pt) const {
    for (const auto& g : eqs)
      if (g.eval(z, pt) != 0) return false;
    for (const auto& h : ineqs)
      if (h.eval(z, pt) == 0) return false;
    return true;
  }
};

std::vector<std::string> describe(const ZechField& z, const std::vector<Code>& pt) {
  std::vector<std::string> out;
  for (Code c : pt) {
    std::ostringstream os;
    os << z.to_elem(c);
    out.push_back(os.str());
  }
  return out;
}

void check_ambient(const Decomposition& d) {
  for (const auto& piece : d.pieces)
    if (piece.ambient != d.target.ambient || piece.nvars() != d.target.nvars())
      throw Error(Errc::Mismatch, "piece of '" + d.name + "' lives in a different ambient space");
}

/// Pointwise pass over X(F_{q^m}) for target and pieces; nullopt when clean.
std::optional<Witness> locate_points(const Decomposition& d, const ZechField& z, std::uint64_t budget) {
  const Membership target(d.target, z);
  std::vector<Membership> pieces;
  for (const auto& piece : d.pieces) pieces.emplace_back(piece, z);
  std::optional<Witness> found;
  try {
    for_each_point(d.target, z, budget, [&](const std::vector<Code>& pt) {
      std::vector<std::size_t> hits;
      for (std::size_t i = 0; i < pieces.size(); ++i)
        if (pieces[i].contains(z, pt.data())) hits.push_back(i);
      if (hits.size() == 1) return;
      found = Witness{hits.empty() ? Errc::Uncovered : Errc::DoubleCovered, describe(z, pt), hits, "", ""};
      throw found->kind;
    });
    for (std::size_t i = 0; i < d.pieces.size(); ++i)
      for_each_point(d.pieces[i], z, budget, [&](const std::vector<Code>& pt) {
        if (target.contains(z, pt.data())) return;
        found = Witness{Errc::TotalMismatch, describe(z, pt), {i}, "", ""};
        throw found->kind;
      });
  } catch (Errc) {
  }
  return found;
}

template <class V>
std::string show(const V& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

RealizationReport compare_totals(std::string tag, const auto& lhs, const auto& rhs) {
  RealizationReport rep{std::move(tag), true, std::nullopt};
  if (!(lhs == rhs)) {
    rep.pass = false;
    rep.witness = Witness{Errc::TotalMismatch, {}, {}, show(lhs), show(rhs)};
  }
  return rep;
}

AdditiveCharacter unit_character(const Realization& r) {
  const FiniteField fq = build_field(r.p, r.k);
  return AdditiveCharacter(fq, fq.one());
}

VarietySpec restricted(VarietySpec piece, const VarietySpec& target) {
  piece.f = target.f;
  return piece;
}

}  // namespace

std::vector<RealizationReport> verify_disjoint_cover(const Decomposition& d, const std::vector<Realization>& rs,
                                                     const HeightOptions& opts) {
  check_ambient(d);
  d.target.validate();
  std::vector<RealizationReport> out;
  const CountOptions copts{opts.budget, opts.threads};
  for (const auto& r : rs) {
    if (r.kind == Realization::Kind::HeightCount) {
      std::uint64_t sum = 0;
      for (const auto& piece : d.pieces) sum += count_points(piece, r.height_degree, r.bound, opts);
      out.push_back(compare_totals(r.tag(), count_points(d.target, r.height_degree, r.bound, opts), sum));
      continue;
    }
    auto z = ZechField::get(r.p, r.k * r.m);
    if (auto w = locate_points(d, *z, opts.budget)) {
      out.push_back({r.tag(), false, std::move(w)});
      continue;
    }
    const FiniteField fq = build_field(r.p, r.k);
    if (r.kind == Realization::Kind::PointCount) {
      Integer sum = 0;
      for (const auto& piece : d.pieces) sum += point_count(piece, fq, r.m, copts);
      out.push_back(compare_totals(r.tag(), point_count(d.target, fq, r.m, copts), sum));
    } else {
      const AdditiveCharacter chi = unit_character(r);
      CyclotomicInt sum = CyclotomicInt(r.p);
      for (const auto& piece : d.pieces) sum += exp_sum(restricted(piece, d.target), chi, r.m, copts);
      out.push_back(compare_totals(r.tag(), exp_sum(d.target, chi, r.m, copts), sum));
    }
  }
  return out;
}

namespace {

const VarietySpec& resolve(const ClassRegistry& classes, const std::string& id) {
  auto it = classes.find(id);
  if (it == classes.end()) throw Error(Errc::ParseError, "unknown class id '" + id + "'");
  return it->second;
}

std::optional<double> sigma_hat(const VarietySpec& x, const SigmaOptions& so, const HeightOptions& opts) {
  try {
    return abscissa_estimate(height_table(x, so.m, so.grid, opts));
  } catch (const Error& e) {
    if (e.code() == Errc::InsufficientSamples && count_points(x, so.m, so.grid.back(), opts) == 0) return std::nullopt;
    throw;
  }
}

}  // namespace

LedgerReport ledger_check(const LedgerRelation& rel, const ClassRegistry& classes, const std::vector<Realization>& rs,
                          const std::optional<SigmaOptions>& sigma, const HeightOptions& opts) {
  LedgerReport rep;
  rep.relation = rel;
  const VarietySpec& left = resolve(classes, rel.left);
  std::vector<const VarietySpec*> right;
  for (const auto& id : rel.right) right.push_back(&resolve(classes, id));
  const CountOptions copts{opts.budget, opts.threads};
  for (const auto& r : rs) {
    switch (r.kind) {
      case Realization::Kind::PointCount: {
        const FiniteField fq = build_field(r.p, r.k);
        Integer sum = 0;
        for (auto* x : right) sum += point_count(*x, fq, r.m, copts);
        rep.realizations.push_back(compare_totals(r.tag(), point_count(left, fq, r.m, copts), sum));
        break;
      }
      case Realization::Kind::ExpSum: {
        const AdditiveCharacter chi = unit_character(r);
        CyclotomicInt sum = CyclotomicInt(r.p);
        for (auto* x : right) sum += exp_sum(*x, chi, r.m, copts);
        rep.realizations.push_back(compare_totals(r.tag(), exp_sum(left, chi, r.m, copts), sum));
        break;
      }
      case Realization::Kind::HeightCount: {
        std::uint64_t sum = 0;
        for (auto* x : right) sum += count_points(*x, r.height_degree, r.bound, opts);
        rep.realizations.push_back(compare_totals(r.tag(), count_points(left, r.height_degree, r.bound, opts), sum));
        break;
      }
    }
  }
  if (sigma) {
    SigmaConsistency sc;
    sc.left = sigma_hat(left, *sigma, opts);
    for (auto* x : right) sc.right.push_back(sigma_hat(*x, *sigma, opts));
    if (sc.left && sc.right.size() == 2) {
      const auto& v = sc.right[0];
      const auto& w = sc.right[1];
      sc.complement_consistent = w && std::fabs(*w - *sc.left) < sigma->tolerance;
      sc.sieve = !v || *v < *sc.left - sigma->margin;
    }
    rep.sigma = sc;
  }
  return rep;
}

Stratification stratify(const VarietySpec& u, const std::vector<VarietySpec>& candidates, const SigmaOptions& sigma,
                        const HeightOptions& opts) {
  const std::uint64_t top = sigma.grid.back();
  std::vector<std::optional<double>> sig(candidates.size());
  std::vector<bool> known(candidates.size(), false);
  auto sigma_of = [&](std::size_t i) {
    if (!known[i]) {
      sig[i] = sigma_hat(candidates[i], sigma, opts);
      known[i] = true;
    }
    return sig[i];
  };
  auto inside = [&](const VarietySpec& c, const VarietySpec& cur) {
    return count_points(c, sigma.m, top, opts) == count_points(intersection(c, cur), sigma.m, top, opts);
  };
  const auto su = sigma_hat(u, sigma, opts);
  if (!su) throw Error(Errc::InsufficientSamples, "U has no points on the grid");

  // Longest greedy continuation from `cur`, as candidate indices.
  std::function<std::vector<std::size_t>(const VarietySpec&, double, std::vector<bool>)> extend =
      [&](const VarietySpec& cur, double s, std::vector<bool> used) {
        std::vector<std::size_t> best;
        double best_drop = 0;
        bool found = false;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
          if (used[i]) continue;
          const auto si = sigma_of(i);
          if (!si || s - *si <= sigma.margin || !inside(candidates[i], cur)) continue;
          const double drop = s - *si;
          auto next = used;
          next[i] = true;
          std::vector<std::size_t> path{i};
          const auto rest = extend(candidates[i], *si, next);
          path.insert(path.end(), rest.begin(), rest.end());
          const bool tie = found && std::fabs(drop - best_drop) < 1e-9;
          if (!found || drop > best_drop + 1e-9 || (tie && path.size() < best.size())) {
            best = std::move(path);
            best_drop = drop;
            found = true;
          }
        }
        return best;
      };

  Stratification out;
  out.chain.push_back(u);
  out.sigmas.push_back(*su);
  for (std::size_t i : extend(u, *su, std::vector<bool>(candidates.size(), false))) {
    out.chain.push_back(candidates[i]);
    out.sigmas.push_back(*sig[i]);
  }
  out.decomposition.name = "stratification";
  out.decomposition.target = u;
  for (std::size_t i = 0; i + 1 < out.chain.size(); ++i)
    for (auto& piece : difference_pieces(out.chain[i], out.chain[i + 1])) out.decomposition.pieces.push_back(piece);
  out.decomposition.pieces.push_back(out.chain.back());
  if (out.chain.size() == 1) out.status = Errc::NoStrictDrop;
  return out;
}

namespace {

bool meets(Accumulation got, Accumulation mode) {
  if (mode == Accumulation::Strong) return got == Accumulation::Strong;
  if (mode == Accumulation::Weak) return got != Accumulation::None;
  return true;
}

double liminf_surrogate(const AccumulationReport& r) {
  return *std::min_element(r.ratios.begin() + static_cast<std::ptrdiff_t>(r.ratios.size() / 2), r.ratios.end());
}

}  // namespace

AssemblerReport accumulation_assembler_check(const VarietySpec& u, const VarietySpec& v, Accumulation mode, unsigned m,
                                             const std::vector<std::uint64_t>& grid,
                                             const std::optional<VarietySpec>& inner, const AccumulationThresholds& th,
                                             const HeightOptions& opts) {
  AssemblerReport rep;
  rep.direct = accumulation_test(v, u, m, grid, th, opts);
  rep.report.tag = std::string("accumulation(") + accumulation_name(mode) + ",B=" + std::to_string(grid.back()) + ")";
  rep.report.pass = meets(rep.direct.verdict, mode);
  if (inner) {
    const auto in = accumulation_test(*inner, v, m, grid, th, opts);
    const auto comp = accumulation_test(*inner, u, m, grid, th, opts);
    CompositionCheck c;
    c.outer = rep.direct.verdict;
    c.inner = in.verdict;
    c.composed = comp.verdict;
    c.liminf_outer = liminf_surrogate(rep.direct);
    c.liminf_inner = liminf_surrogate(in);
    c.liminf_composed = liminf_surrogate(comp);
    c.bound_holds = c.liminf_composed >= c.liminf_inner * c.liminf_outer * (1 - 1e-12);
    rep.report.pass = rep.report.pass && meets(c.inner, mode) && meets(c.composed, mode) && c.bound_holds;
    rep.composition = c;
  }
  if (!rep.report.pass) {
    Witness w;
    w.kind = Errc::Mismatch;
    w.lhs = accumulation_name(rep.direct.verdict);
    w.rhs = accumulation_name(mode);
    rep.report.witness = w;
  }
  return rep;
}

std::vector<Decomposition> canonical_decompositions() {
  using S = VarietySpec;
  std::vector<Decomposition> out;
  out.push_back({"A1 = {0} + Gm", catalog::affine_line_id(),
                 {S::affine(1).equation("x0").with_f("x0"), S::affine(1).inequation("x0").with_f("x0")}});
  out.push_back({"A2 = A1 x Gm + A1", S::affine(2).with_f("x0 + x1"),
                 {S::affine(2).inequation("x0"), S::affine(2).equation("x0")}});
  out.push_back({"A2 = Gm^2 + axes", S::affine(2).with_f("x0*x1"),
                 {S::affine(2).inequation("x0*x1"), S::affine(2).equation("x0").inequation("x1"),
                  S::affine(2).equation("x1").inequation("x0"), S::affine(2).equation("x0").equation("x1")}});
  out.push_back({"P1 = A1 + pt", catalog::projective_space(1),
                 {S::projective(1).inequation("x0"), S::projective(1).equation("x0")}});
  out.push_back({"P2 = A2 + P1", catalog::projective_space(2),
                 {S::projective(2).inequation("x0"), S::projective(2).equation("x0")}});
  out.push_back({"P2 = A2 + A1 + pt", catalog::projective_space(2),
                 {S::projective(2).inequation("x0"), S::projective(2).equation("x0").inequation("x1"),
                  S::projective(2).equation("x0").equation("x1")}});
  out.push_back({"P3 = A3 + A2 + A1 + pt", catalog::projective_space(3),
                 {S::projective(3).inequation("x0"), S::projective(3).equation("x0").inequation("x1"),
                  S::projective(3).equation("x0").equation("x1").inequation("x2"),
                  S::projective(3).equation("x0").equation("x1").equation("x2")}});
  const S conic = S::projective(2).equation("x0*x2 - x1^2");
  out.push_back({"conic = A1 + pt", conic, {with_inequation(conic, "x0"), with_equation(conic, "x0")}});
  const S line_conic = S::projective(2).equation("x1*(x0*x2 - x1^2)");
  out.push_back({"line+conic = (U - conic) + conic", line_conic,
                 {with_inequation(line_conic, "x0*x2 - x1^2"), conic}});
  out.push_back({"circle = {x0 != 0} + {x0 = 0}", catalog::circle_xy(),
                 {with_inequation(catalog::circle_xy(), "x0"), with_equation(catalog::circle_xy(), "x0")}});
  return out;
}

Decomposition broken_decomposition() {
  return {"A1 = A1 + {0}", catalog::affine_line_id(),
          {VarietySpec::affine(1).with_f("x0"), VarietySpec::affine(1).equation("x0").with_f("x0")}};
}

std::vector<Realization> default_realizations(const VarietySpec& target) {
  std::vector<Realization> rs;
  for (auto [p, k] : std::vector<std::pair<u64, unsigned>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}})
    for (unsigned m : {1u, 2u}) {
      rs.push_back(Realization::point_count(p, k, m));
      rs.push_back(Realization::exp_sum(p, k, m));
    }
  if (target.projective())
    for (std::uint64_t B : {10u, 30u}) rs.push_back(Realization::height_count(B));
  return rs;
}

nlohmann::json to_json(const RealizationReport& r) {
  nlohmann::json j{{"realization", r.tag}, {"pass", r.pass}};
  if (r.witness) {
    const auto& w = *r.witness;
    j["witness"] = {{"kind", std::string(errc_name(w.kind))}, {"point", w.point}, {"pieces", w.pieces}};
    if (!w.lhs.empty() || !w.rhs.empty()) {
      j["witness"]["lhs"] = w.lhs;
      j["witness"]["rhs"] = w.rhs;
    }
  }
  return j;
}

nlohmann::json to_json(const LedgerReport& r) {
  nlohmann::json j{{"left", r.relation.left},
                   {"right", r.relation.right},
                   {"provenance", r.relation.provenance},
                   {"pass", r.pass()}};
  j["realizations"] = nlohmann::json::array();
  for (const auto& x : r.realizations) j["realizations"].push_back(to_json(x));
  if (r.sigma) {
    auto opt = [](const std::optional<double>& s) { return s ? nlohmann::json(*s) : nlohmann::json(nullptr); };
    nlohmann::json right = nlohmann::json::array();
    for (const auto& s : r.sigma->right) right.push_back(opt(s));
    j["sigma"] = {{"left", opt(r.sigma->left)},
                  {"right", right},
                  {"complement_consistent", r.sigma->complement_consistent},
                  {"sieve", r.sigma->sieve}};
  }
  return j;
}

std::vector<LedgerRelation> relations_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw Error(Errc::ParseError, "relations file must hold a JSON list");
  std::vector<LedgerRelation> out;
  try {
    for (const auto& r : doc) {
      LedgerRelation rel;
      rel.left = r.at("left").get<std::string>();
      rel.right = r.at("right").get<std::vector<std::string>>();
      rel.provenance = r.value("provenance", std::string());
      out.push_back(std::move(rel));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return out;
}

}  // namespace zetalab
