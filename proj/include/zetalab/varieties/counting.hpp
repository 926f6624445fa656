#pragma once

#include <cstdint>
#include <vector>

#include "zetalab/cyclofield/finite_field.hpp"
#include "zetalab/numeric.hpp"
#include "zetalab/varieties/spec.hpp"

namespace zetalab {

/// Counts indexed by the exponent e in Z/p (length p).
using Histogram = std::vector<Integer>;

/// Candidate tuples per level; ZETALAB_BUDGET overrides the 10^8 default.
std::uint64_t default_budget();

struct CountOptions {
  std::uint64_t budget = default_budget();
  unsigned threads = 1;
};

/// H[e] = #{x in X(F_{q^m}) : Tr_{F_{q^m}/F_p}(c f(x)) = e}, for the twist c in
/// F_q (c = 0 ignores f). Single-variable pieces are counted in closed form;
/// the rest is enumerated over the table-backed field F_{q^m}, solving for
/// one coordinate where an equation allows it. Throws BudgetExceeded.
Histogram level_histogram(const VarietySpec& x, const FiniteField& fq, const FFElem& c, unsigned m,
                          const CountOptions& opts = {});

/// level_histogram for m = 1..T.
std::vector<Histogram> level_histograms(const VarietySpec& x, const FiniteField& fq, const FFElem& c, unsigned T,
                                        const CountOptions& opts = {});

/// #X(F_{q^m}).
Integer point_count(const VarietySpec& x, const FiniteField& fq, unsigned m, const CountOptions& opts = {});

}  // namespace zetalab
