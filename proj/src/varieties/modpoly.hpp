#pragma once

// Polynomials reduced mod p, and their compiled form over a Zech field.

#include <map>
#include <vector>

#include "zetalab/cyclofield/modular.hpp"
#include "zetalab/cyclofield/zech.hpp"
#include "zetalab/varieties/polynomial.hpp"

namespace zetalab::detail {

struct ModPoly {
  unsigned nvars = 0;
  std::map<Exponents, u64> terms;

  static ModPoly reduce(const Polynomial& g, u64 p);
  static ModPoly constant(unsigned nvars, u64 c);

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  u64 constant_term() const;
  int degree_in(unsigned v) const;
  std::vector<unsigned> variables() const;
  /// Single term?
  bool is_monomial() const { return terms.size() == 1; }

  ModPoly substitute(unsigned v, u64 value, u64 p) const;
  ModPoly without_constant() const;
  /// Univariate image when only x_v occurs.
  FpPoly univariate(unsigned v, u64 p) const;
  /// Coefficients of powers of x_v (x_v removed from each coefficient).
  std::vector<ModPoly> coefficients_in(unsigned v) const;

  friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.terms == b.terms; }
};

/// Polynomial compiled against a Zech field: sum of coef * prod x_v^e.
struct ZPoly {
  struct Term {
    ZechField::Code coef;
    std::vector<std::pair<unsigned, unsigned>> factors;
  };
  std::vector<Term> terms;

  static ZPoly compile(const ModPoly& g, const ZechField& z);
  bool empty() const { return terms.empty(); }

  ZechField::Code eval(const ZechField& z, const ZechField::Code* x) const {
    const u64 order = z.size() - 1;
    ZechField::Code acc = 0;
    for (const auto& t : terms) {
      u64 l = t.coef - 1;
      bool zero = false;
      for (const auto& [v, e] : t.factors) {
        const ZechField::Code xv = x[v];
        if (xv == 0) {
          zero = true;
          break;
        }
        l = (l + static_cast<u64>(xv - 1) * e) % order;
      }
      if (!zero) acc = z.add(acc, static_cast<ZechField::Code>(l + 1));
    }
    return acc;
  }
};

/// Univariate polynomial with Zech-coded coefficients, low to high.
inline ZechField::Code horner(const ZechField& z, const std::vector<ZechField::Code>& c, ZechField::Code y) {
  ZechField::Code acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = z.add(z.mul(acc, y), c[i]);
  return acc;
}

}  // namespace zetalab::detail
