#include "zetalab/varieties/points.hpp"

#include <cmath>

#include "modpoly.hpp"
#include "zetalab/error.hpp"

namespace zetalab {

using Code = ZechField::Code;
using detail::ModPoly;
using detail::ZPoly;

void for_each_point(const VarietySpec& x, const ZechField& field, std::uint64_t budget,
                    const std::function<void(const std::vector<Code>&)>& visit) {
  x.validate();
  const u64 p = field.p();
  const u64 Q = field.size();
  const unsigned n = x.nvars();
  std::vector<ZPoly> eqs, ineqs;
  for (const auto& g : x.equations) eqs.push_back(ZPoly::compile(ModPoly::reduce(g, p), field));
  for (const auto& h : x.inequations) ineqs.push_back(ZPoly::compile(ModPoly::reduce(h, p), field));

  long double total = 0;
  if (x.projective())
    for (unsigned j = 0; j < n; ++j) total += std::pow(static_cast<long double>(Q), n - 1 - j);
  else
    total = std::pow(static_cast<long double>(Q), n);
  if (total > static_cast<long double>(budget))
    throw Error(Errc::BudgetExceeded, "about " + std::to_string(static_cast<double>(total)) +
                                          " candidate points over F_" + std::to_string(Q));

  std::vector<Code> pt(n, 0);
  auto accept = [&]() {
    for (const auto& g : eqs)
      if (g.eval(field, pt.data()) != 0) return false;
    for (const auto& h : ineqs)
      if (h.eval(field, pt.data()) == 0) return false;
    return true;
  };
  auto walk = [&](unsigned start) {
    for (unsigned i = start; i < n; ++i) pt[i] = 0;
    while (true) {
      if (accept()) visit(pt);
      bool done = true;
      for (unsigned i = n; i > start;) {
        --i;
        if (++pt[i] < Q) {
          done = false;
          break;
        }
        pt[i] = 0;
      }
      if (done) return;
    }
  };
  if (!x.projective()) {
    walk(0);
    return;
  }
  for (unsigned j = 0; j < n; ++j) {
    for (unsigned i = 0; i < j; ++i) pt[i] = 0;
    pt[j] = ZechField::one();
    walk(j + 1);
  }
}

PointEnumeration enumerate_points(const VarietySpec& x, const FiniteField& fq, unsigned m, std::uint64_t budget) {
  if (m == 0) throw Error(Errc::DegreeZero, "extension degree m must be positive");
  auto z = ZechField::get(fq.p(), fq.k() * m);
  PointEnumeration out;
  out.field = z->field();
  out.m = m;
  for_each_point(x, *z, budget, [&](const std::vector<Code>& pt) {
    std::vector<FFElem> coords;
    coords.reserve(pt.size());
    for (Code c : pt) coords.push_back(z->to_elem(c));
    out.points.push_back(std::move(coords));
  });
  return out;
}

Integer ClosedPointTally::degree_count(unsigned r) const {
  Integer s = 0;
  for (const auto& v : a.at(r - 1)) s += v;
  return s;
}

Integer ClosedPointTally::points(unsigned m) const {
  if (m > r_max) throw Error(Errc::TallyTooShallow, "tally has depth " + std::to_string(r_max));
  Integer s = 0;
  for (unsigned r = 1; r <= m; ++r)
    if (m % r == 0) s += Integer(r) * degree_count(r);
  return s;
}

CyclotomicInt ClosedPointTally::exp_sum(unsigned m) const {
  if (m > r_max) throw Error(Errc::TallyTooShallow, "tally has depth " + std::to_string(r_max));
  Histogram h(p, Integer(0));
  for (unsigned r = 1; r <= m; ++r) {
    if (m % r) continue;
    for (u64 e = 0; e < p; ++e) h[mulmod(e, (m / r) % p, p)] += Integer(r) * a[r - 1][e];
  }
  return histogram_value(h);
}

CyclotomicInt histogram_value(const Histogram& h) { return CyclotomicInt::from_histogram(h.size(), h); }

ClosedPointTally tally_from_histograms(u64 q, const std::vector<Histogram>& levels) {
  ClosedPointTally t;
  t.q = q;
  t.r_max = static_cast<unsigned>(levels.size());
  t.p = levels.empty() ? 2 : levels[0].size();
  const u64 p = t.p;
  for (unsigned m = 1; m <= t.r_max; ++m) {
    // Points of X(F_{q^m}) new in degree m, valued at level m.
    Histogram fresh(p, Integer(0));
    for (unsigned d : divisors(m)) {
      const int mu = moebius(m / d);
      if (mu == 0) continue;
      const u64 scale = (m / d) % p;
      const Histogram& H = levels[d - 1];
      for (u64 e = 0; e < p; ++e) fresh[mulmod(e, scale, p)] += mu * H[e];
    }
    std::vector<Integer> row(p, Integer(0));
    for (u64 e = 0; e < p; ++e) {
      if (fresh[e] < 0 || !divide_exact(fresh[e], Integer(m), row[e]))
        throw Error(Errc::NonIntegralCoefficient, "degree-" + std::to_string(m) + " orbit count " +
                                                      fresh[e].get_str() + " at e=" + std::to_string(e));
    }
    t.a.push_back(std::move(row));
  }
  return t;
}

ClosedPointTally closed_point_tally(const VarietySpec& x, const AdditiveCharacter& chi, unsigned r_max,
                                    const CountOptions& opts) {
  x.validate();
  return tally_from_histograms(chi.field().size(), level_histograms(x, chi.field(), chi.twist(), r_max, opts));
}

ClosedPointTally closed_point_tally_by_orbits(const VarietySpec& x, const AdditiveCharacter& chi, unsigned r_max,
                                              std::uint64_t budget) {
  x.validate();
  const FiniteField& fq = chi.field();
  const u64 p = fq.p();
  ClosedPointTally t;
  t.p = p;
  t.q = fq.size();
  t.r_max = r_max;
  for (unsigned r = 1; r <= r_max; ++r) {
    auto z = ZechField::get(p, fq.k() * r);
    const Code cz = z->from_elem(FieldEmbedding(fq, z->field()).apply(chi.twist()));
    const ZPoly f = ZPoly::compile(ModPoly::reduce(x.f, p), *z);
    std::vector<unsigned> maximal;
    for (u64 l : prime_factors(r)) maximal.push_back(r / static_cast<unsigned>(l));
    std::vector<std::uint64_t> fresh(p, 0);
    for_each_point(x, *z, budget, [&](const std::vector<Code>& pt) {
      for (unsigned d : maximal) {
        bool inside = true;
        for (Code c : pt) inside = inside && z->in_subfield(c, fq.k() * d);
        if (inside) return;
      }
      ++fresh[z->trace(z->mul(cz, f.eval(*z, pt.data())))];
    });
    std::vector<Integer> row(p, Integer(0));
    for (u64 e = 0; e < p; ++e) {
      if (fresh[e] % r)
        throw Error(Errc::NonIntegralCoefficient, "orbit count not divisible by degree " + std::to_string(r));
      row[e] = Integer(static_cast<unsigned long>(fresh[e] / r));
    }
    t.a.push_back(std::move(row));
  }
  return t;
}

CyclotomicInt exp_sum(const VarietySpec& x, const AdditiveCharacter& chi, unsigned m, const CountOptions& opts) {
  x.validate();
  return histogram_value(level_histogram(x, chi.field(), chi.twist(), m, opts));
}

std::vector<ClosedPoint> closed_points(const ClosedPointTally& tally, unsigned n, std::uint64_t budget) {
  if (n > tally.r_max)
    throw Error(Errc::TallyTooShallow,
                "degree " + std::to_string(n) + " needs closed points up to degree " + std::to_string(n) +
                    ", tally has " + std::to_string(tally.r_max));
  Integer total = 0;
  for (unsigned r = 1; r <= n; ++r) total += tally.degree_count(r);
  if (total > Integer(static_cast<unsigned long>(budget)))
    throw Error(Errc::BudgetExceeded, total.get_str() + " closed points");
  std::vector<ClosedPoint> pts;
  for (unsigned r = 1; r <= n; ++r)
    for (u64 e = 0; e < tally.p; ++e)
      for (Integer i = 0; i < tally.at(r, e); ++i) pts.push_back({r, e, i});
  return pts;
}

void for_each_divisor(const ClosedPointTally& tally, unsigned n, std::uint64_t budget,
                      const std::function<void(const DivisorMultiset&, u64 e)>& visit) {
  const auto pts = closed_points(tally, n, budget);
  const u64 p = tally.p;
  DivisorMultiset D;
  std::uint64_t nodes = 0;
  std::function<void(std::size_t, unsigned, u64)> rec = [&](std::size_t start, unsigned remaining, u64 e) {
    if (++nodes > budget) throw Error(Errc::BudgetExceeded, "divisor enumeration exceeded the budget");
    if (remaining == 0) {
      D.degree = n;
      visit(D, e);
      return;
    }
    for (std::size_t j = start; j < pts.size(); ++j) {
      const unsigned r = pts[j].degree;
      if (r > remaining) break;
      for (unsigned mult = 1; mult * r <= remaining; ++mult) {
        D.parts.emplace_back(j, mult);
        rec(j + 1, remaining - mult * r, (e + mulmod(pts[j].e, mult % p, p)) % p);
        D.parts.pop_back();
      }
    }
  };
  rec(0, n, 0);
}

SymDivisorSum sym_divisors(const ClosedPointTally& tally, unsigned n, std::uint64_t budget) {
  Histogram h(tally.p, Integer(0));
  Integer count = 0;
  if (n == 0) {
    h[0] = 1;
    return {Integer(1), histogram_value(h)};
  }
  for_each_divisor(tally, n, budget, [&](const DivisorMultiset&, u64 e) {
    ++count;
    h[e] += 1;
  });
  return {count, histogram_value(h)};
}

}  // namespace zetalab
