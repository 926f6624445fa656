#pragma once

// Independent brute-force oracles for the test suite: plain FFElem
// arithmetic, no tables, no case analysis.

#include <functional>
#include <vector>

#include "zetalab/cyclofield/finite_field.hpp"
#include "zetalab/varieties/counting.hpp"
#include "zetalab/varieties/spec.hpp"

namespace oracle {

using namespace zetalab;

inline FFElem eval(const Polynomial& g, const std::vector<FFElem>& x, const FiniteField& F) {
  FFElem acc = F.zero();
  for (const auto& [e, c] : g.terms()) {
    FFElem t = F.from_int(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t *= x[i].pow(e[i]);
    acc += t;
  }
  return acc;
}

/// Calls visit(point) for each point of X(F); projective points normalized.
inline void points(const VarietySpec& x, const FiniteField& F, const std::function<void(const std::vector<FFElem>&)>& visit) {
  const unsigned n = x.nvars();
  std::vector<u64> idx(n, 0);
  std::vector<FFElem> pt(n, F.zero());
  while (true) {
    for (unsigned i = 0; i < n; ++i) pt[i] = F.from_index(idx[i]);
    bool ok = true;
    if (x.projective()) {
      unsigned j = 0;
      while (j < n && pt[j].is_zero()) ++j;
      ok = j < n && pt[j] == F.one();
    }
    for (const auto& g : x.equations)
      if (ok && !eval(g, pt, F).is_zero()) ok = false;
    for (const auto& h : x.inequations)
      if (ok && eval(h, pt, F).is_zero()) ok = false;
    if (ok) visit(pt);
    unsigned i = n;
    bool done = true;
    while (i-- > 0) {
      if (++idx[i] < F.size()) {
        done = false;
        break;
      }
      idx[i] = 0;
    }
    if (done) return;
  }
}

/// Histogram of Tr_{F/F_p}(c f(x)), c given in the subfield fq.
inline Histogram histogram(const VarietySpec& x, const FiniteField& fq, const FFElem& c, unsigned m) {
  const FiniteField F = build_field(fq.p(), fq.k() * m);
  const FieldEmbedding emb(fq, F);
  const FFElem cc = emb.apply(c);
  Histogram h(fq.p(), Integer(0));
  points(x, F, [&](const std::vector<FFElem>& pt) { h[absolute_trace(cc * eval(x.f, pt, F))] += 1; });
  return h;
}

inline Integer count(const VarietySpec& x, const FiniteField& fq, unsigned m) {
  Histogram h = histogram(x, fq, fq.zero(), m);
  Integer s = 0;
  for (auto& v : h) s += v;
  return s;
}

}  // namespace oracle
