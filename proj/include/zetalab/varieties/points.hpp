#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "zetalab/cyclofield/character.hpp"
#include "zetalab/cyclofield/cyclotomic.hpp"
#include "zetalab/cyclofield/zech.hpp"
#include "zetalab/varieties/counting.hpp"
#include "zetalab/varieties/spec.hpp"

namespace zetalab {

/// Brute-force walk over X(F) for a table-backed field F, one callback per
/// point (Zech codes; projective points with first nonzero coordinate 1).
/// Throws BudgetExceeded when the candidate count exceeds `budget`.
void for_each_point(const VarietySpec& x, const ZechField& field, std::uint64_t budget,
                    const std::function<void(const std::vector<ZechField::Code>&)>& visit);

struct PointEnumeration {
  FiniteField field;  // F_{q^m}
  unsigned m = 1;
  std::vector<std::vector<FFElem>> points;
};

PointEnumeration enumerate_points(const VarietySpec& x, const FiniteField& fq, unsigned m,
                                  std::uint64_t budget = default_budget());

/// a[r-1][e]: closed points of degree r whose character value is zeta_p^e.
struct ClosedPointTally {
  u64 p = 2;
  u64 q = 2;
  unsigned r_max = 0;
  std::vector<std::vector<Integer>> a;

  const Integer& at(unsigned r, u64 e) const { return a.at(r - 1).at(e); }
  /// a_r = sum over e.
  Integer degree_count(unsigned r) const;
  /// N_m = sum_{r|m} r a_r.
  Integer points(unsigned m) const;
  /// sum_e sum_{r|m} r a_{e,r} zeta^{e m / r}.
  CyclotomicInt exp_sum(unsigned m) const;
};

/// Closed points from per-level histograms H_1..H_T by Moebius inversion
/// over the subfield lattice; fails with NonIntegralCoefficient if some
/// fresh count is not a multiple of its degree.
ClosedPointTally tally_from_histograms(u64 q, const std::vector<Histogram>& levels);

ClosedPointTally closed_point_tally(const VarietySpec& x, const AdditiveCharacter& chi, unsigned r_max,
                                    const CountOptions& opts = {});

/// Same tally by explicit orbit detection: a point of X(F_{q^r}) is new in
/// degree r when its coordinates are not all fixed by Frob^d for any proper
/// divisor d of r.
ClosedPointTally closed_point_tally_by_orbits(const VarietySpec& x, const AdditiveCharacter& chi, unsigned r_max,
                                              std::uint64_t budget = default_budget());

/// N_{chi,m} = sum over X(F_{q^m}) of chi(Tr f(x)).
CyclotomicInt exp_sum(const VarietySpec& x, const AdditiveCharacter& chi, unsigned m, const CountOptions& opts = {});

CyclotomicInt histogram_value(const Histogram& h);

struct ClosedPoint {
  unsigned degree;
  u64 e;
  Integer index;
};

/// Effective 0-cycle: (closed point id, multiplicity) pairs, ids ascending.
struct DivisorMultiset {
  std::vector<std::pair<std::size_t, unsigned>> parts;
  unsigned degree = 0;
};

/// Closed points of degree <= n, ordered by (degree, e, index).
std::vector<ClosedPoint> closed_points(const ClosedPointTally& tally, unsigned n, std::uint64_t budget);

/// Visits every effective 0-cycle of degree n once. TallyTooShallow if n > r_max.
void for_each_divisor(const ClosedPointTally& tally, unsigned n, std::uint64_t budget,
                      const std::function<void(const DivisorMultiset&, u64 e)>& visit);

struct SymDivisorSum {
  Integer count;
  CyclotomicInt sum;
};

/// #Sym^n X(F_q) and sum_D chi(f^{(n)}(D)) by explicit enumeration.
SymDivisorSum sym_divisors(const ClosedPointTally& tally, unsigned n, std::uint64_t budget = default_budget());

}  // namespace zetalab
