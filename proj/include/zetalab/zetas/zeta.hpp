#pragma once

#include <vector>

#include "zetalab/cyclofield/character.hpp"
#include "zetalab/varieties/counting.hpp"
#include "zetalab/varieties/points.hpp"
#include "zetalab/varieties/spec.hpp"
#include "zetalab/zetas/series.hpp"

namespace zetalab {

/// Both computations of one zeta function: exp of the power sums, and the
/// product over closed points.
template <class R>
struct ZetaRoutes {
  Series<R> power_sums;
  Series<R> euler_product;
};

/// prod_r (1 - t^r)^{-a_r} from a closed point tally.
Series<Integer> hw_euler_product(const ClosedPointTally& tally, unsigned T);
/// prod_{e,r} (1 - zeta^e t^r)^{-a_{e,r}}, e ascending then r ascending.
Series<CyclotomicInt> exp_euler_product(const ClosedPointTally& tally, unsigned T);

ZetaRoutes<Integer> hw_zeta_routes(const VarietySpec& x, const FiniteField& fq, unsigned T,
                                   const CountOptions& opts = {});
ZetaRoutes<CyclotomicInt> exp_zeta_routes(const VarietySpec& x, const AdditiveCharacter& chi, unsigned T,
                                          const CountOptions& opts = {});

/// Hasse-Weil zeta through t^T; RouteMismatch if the two routes differ.
Series<Integer> hw_zeta(const VarietySpec& x, const FiniteField& fq, unsigned T = 12, const CountOptions& opts = {});

/// Exponential-sum zeta of (X, f) for chi through t^T, over Z[zeta_p].
Series<CyclotomicInt> exp_zeta(const VarietySpec& x, const AdditiveCharacter& chi, unsigned T = 8,
                               const CountOptions& opts = {});

struct KapranovRow {
  unsigned n = 0;
  CyclotomicInt zeta_coefficient;
  CyclotomicInt divisor_sum;
  Integer divisors;
};

struct KapranovReport {
  std::vector<KapranovRow> rows;
};

/// Compares the t^n coefficient of exp_zeta with the sum over effective
/// 0-cycles of degree n, n = 0..n_max. CoefficientMismatch on the first failure.
KapranovReport kapranov_check(const VarietySpec& x, const AdditiveCharacter& chi, unsigned n_max,
                              const CountOptions& opts = {});

}  // namespace zetalab
