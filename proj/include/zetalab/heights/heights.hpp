#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zetalab/numeric.hpp"
#include "zetalab/varieties/counting.hpp"
#include "zetalab/varieties/spec.hpp"

namespace zetalab {

using IntVec = std::vector<std::int64_t>;

/// gcd 1, first nonzero coordinate positive. ZeroVector for the zero tuple.
IntVec normalize(const IntVec& coords);

/// (max |x_i|)^m for a normalized point.
Integer weil_height(const IntVec& point, unsigned m);

struct PlaceFactor {
  u64 prime;          // 0 for the archimedean place
  Rational absolute;  // |lambda|_v
};

struct ProductFormulaReport {
  std::vector<PlaceFactor> factors;
  Rational product;
};

/// |lambda|_inf * prod_p |lambda|_p over the primes of numerator and denominator.
/// ZeroInput for lambda = 0; Mismatch if the product is not 1.
ProductFormulaReport verify_product_formula(const Rational& lambda);

struct HeightOptions {
  std::uint64_t budget = default_budget();
  unsigned threads = 1;
};

/// counts[r] = number of points of V(Q) with max |x_i| = r, r = 0..R.
/// V must be projective; BudgetExceeded if (2R+1)^{n+1} exceeds the budget.
std::vector<std::uint64_t> count_by_radius(const VarietySpec& v, std::uint64_t R, const HeightOptions& opts = {});

/// Largest r with r^m <= B.
std::uint64_t height_radius(std::uint64_t B, unsigned m);

/// #{x in V(Q) : h_{O(m)}(x) <= B}.
std::uint64_t count_points(const VarietySpec& v, unsigned m, std::uint64_t B, const HeightOptions& opts = {});

/// All heights h_{O(m)}(x) <= B, nondecreasing.
std::vector<double> sorted_heights(const VarietySpec& v, unsigned m, std::uint64_t B, const HeightOptions& opts = {});

struct HeightCountTable {
  unsigned m = 1;
  std::vector<std::uint64_t> bounds;
  std::vector<std::uint64_t> counts;
  std::string variety;
};

HeightCountTable height_table(const VarietySpec& v, unsigned m, const std::vector<std::uint64_t>& bounds,
                              const HeightOptions& opts = {});

/// 1, 2, 4, ... below top, then top itself.
std::vector<std::uint64_t> dyadic_grid(std::uint64_t top);

/// sum over h(x) <= B of h(x)^{-s}.
long double height_zeta_partial(const VarietySpec& v, unsigned m, double s, std::uint64_t B,
                                const HeightOptions& opts = {});

/// Least-squares slope of log N against log B over the top half of the grid.
/// InsufficientSamples below 4 samples or one decade.
double abscissa_estimate(const HeightCountTable& tbl);

struct AsymptoticFit {
  double beta = 0;
  unsigned t = 0;
  double c = 0;
  double residual = 0;  // root mean square, log scale
};

/// N ~ c B^beta (log B)^t with t in {0,1,2,3}; PoorFit if the best residual
/// exceeds max_residual.
AsymptoticFit asymptotic_fit(const HeightCountTable& tbl, double max_residual = 0.05);

enum class Accumulation { Strong, Weak, None };
const char* accumulation_name(Accumulation a);

struct AccumulationThresholds {
  double strong = 0.9;
  double weak = 0.1;
};

struct AccumulationReport {
  Accumulation verdict = Accumulation::None;
  std::vector<std::uint64_t> grid;
  std::vector<double> ratios;  // N_V(B) / N_U(B)
  AccumulationThresholds thresholds;
};

/// Strong: ratio at the top bound above `strong` and not below the ratio at
/// the start of the top half. Weak: minimum ratio over the top half above
/// `weak`. NotASubvariety if some enumerated point of V is not on U.
AccumulationReport accumulation_test(const VarietySpec& v, const VarietySpec& u, unsigned m,
                                     const std::vector<std::uint64_t>& grid, const AccumulationThresholds& th = {},
                                     const HeightOptions& opts = {});

struct SchanuelReport {
  unsigned n = 1;
  std::uint64_t B = 1;
  std::uint64_t count = 0;
  double ratio = 0;  // N / B^{n+1}
  double limit = 0;  // 2^n / zeta(n+1)
  double relative_error = 0;
};

SchanuelReport schanuel_check(unsigned n, std::uint64_t B, const HeightOptions& opts = {});

/// Nondecreasing family; `complete` marks a finite family given in full.
struct Family {
  std::vector<double> values;
  bool complete = false;
};

/// N_lambda ~ c_lambda B log^s B, N_mu ~ c_mu B log^r B.
struct ProductLaw {
  unsigned r = 0, s = 0;
  double c_lambda = 1, c_mu = 1;
};

struct MergeReport {
  std::uint64_t count = 0;  // #{(i, j) : lambda_i mu_j < B}
  double beta_constant = 1; // C(r, s) = Beta(r + 1, s + 1)
  double predicted = 0;     // C c_lambda c_mu B log^{r+s+1} B
  double ratio = 0;
  std::optional<AsymptoticFit> fit;
};

/// PrefixTooShort if an incomplete family stops before the values needed below B.
MergeReport merge_product_counts(const Family& lambda, const Family& mu, double B, const ProductLaw& law = {});

}  // namespace zetalab
