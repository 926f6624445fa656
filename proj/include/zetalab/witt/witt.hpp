#pragma once

#include <string>
#include <vector>

#include "zetalab/cyclofield/finite_field.hpp"
#include "zetalab/numeric.hpp"
#include "zetalab/varieties/counting.hpp"
#include "zetalab/varieties/spec.hpp"
#include "zetalab/zetas/reconstruct.hpp"
#include "zetalab/zetas/series.hpp"

namespace zetalab {

// Big Witt vectors 1 + t R[[t]] truncated at t^T. Addition is the series
// product; multiplication is pointwise on ghost components.

template <class R>
void require_same_order(const Series<R>& u, const Series<R>& v) {
  if (u.order() != v.order())
    throw Error(Errc::OrderMismatch,
                "orders " + std::to_string(u.order()) + " and " + std::to_string(v.order()));
}

template <class R>
Series<R> witt_add(const Series<R>& u, const Series<R>& v) {
  require_same_order(u, v);
  return u * v;
}

/// 1/v for v with constant term 1.
template <class R>
Series<R> series_inverse(const Series<R>& v) {
  const unsigned T = v.order();
  if (!(v[0] == one_like(v[0]))) throw Error(Errc::Mismatch, "constant term must be 1");
  std::vector<R> w(T + 1, zero_like(v[0]));
  w[0] = one_like(v[0]);
  for (unsigned n = 1; n <= T; ++n) {
    R acc = zero_like(v[0]);
    for (unsigned i = 1; i <= n; ++i) acc += v[i] * w[n - i];
    w[n] = -acc;
  }
  return Series<R>(std::move(w));
}

template <class R>
Series<R> witt_sub(const Series<R>& u, const Series<R>& v) {
  require_same_order(u, v);
  return u * series_inverse(v);
}

/// gh(u)_m = t^m coefficient of t u'/u, m = 1..T.
template <class R>
std::vector<R> ghost(const Series<R>& u) {
  return power_sums(u);
}

template <class R>
Series<R> ghost_inverse(const std::vector<R>& g) {
  return exp_power_sums(g, static_cast<unsigned>(g.size()));
}

/// Product through ghosts over the fraction field.
inline Series<Rational> witt_mul(const Series<Rational>& u, const Series<Rational>& v) {
  require_same_order(u, v);
  auto gu = ghost(u), gv = ghost(v);
  for (std::size_t i = 0; i < gu.size(); ++i) gu[i] *= gv[i];
  return ghost_inverse(gu);
}

/// Integral inputs: NonIntegralResult if the product leaves Z.
Series<Integer> witt_mul(const Series<Integer>& u, const Series<Integer>& v);
Series<CyclotomicInt> witt_mul(const Series<CyclotomicInt>& u, const Series<CyclotomicInt>& v);

/// det(1 - t M) as coefficients d_0 = 1, ..., d_n. NonSquare unless M is square.
std::vector<Rational> reciprocal_char_poly(const RationalMatrix& M);

/// det(1 - t M)^{-1} through t^T.
Series<Rational> L_map(const RationalMatrix& M, unsigned T);
Series<Integer> L_map(const IntegerMatrix& M, unsigned T);

/// Companion matrix C with det(1 - t C) = 1 + c_1 t + ... + c_d t^d.
RationalMatrix companion(const std::vector<Rational>& poly);

RationalMatrix direct_sum(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b);

struct TraceIdentityReport {
  Series<Rational> trace_side;        // exp(sum tr(M^m) t^m / m)
  Series<Rational> determinant_side;  // det(1 - t M)^{-1}
};

/// Mismatch with the first differing index on failure.
TraceIdentityReport trace_identity_check(const RationalMatrix& M, unsigned T);

/// Graded pair {(E+, M+), (E-, M-)}; its value is L(M+) -_W L(M-).
struct EndoClass {
  RationalMatrix plus, minus;

  unsigned rank_plus() const { return static_cast<unsigned>(plus.rows()); }
  unsigned rank_minus() const { return static_cast<unsigned>(minus.rows()); }
  Series<Rational> value(unsigned T) const;
};

nlohmann::json to_json(const EndoClass& e);
EndoClass endo_class_from_json(const nlohmann::json& doc);

/// E+ carries the companion of Q, E- that of P. UnverifiedCandidate when the
/// candidate was never checked against a series.
EndoClass zeta_lift(const RationalCandidate<Rational>& rc);

struct ExponentiabilityReport {
  Series<Integer> zeta_x, zeta_y, zeta_union, zeta_product;
  Series<Integer> witt_sum, witt_product;
};

/// zeta(X u Y) = zeta(X) +_W zeta(Y) and zeta(X x Y) = zeta(X) * zeta(Y)
/// through t^T. Mismatch with the coefficient index on failure.
ExponentiabilityReport exponentiability_check(const VarietySpec& x, const VarietySpec& y, const FiniteField& fq,
                                              unsigned T, const CountOptions& opts = {});

}  // namespace zetalab
