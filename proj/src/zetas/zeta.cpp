#include "zetalab/zetas/zeta.hpp"

#include <sstream>

#include "zetalab/error.hpp"

namespace zetalab {

namespace {

template <class R>
std::string describe(const R& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

template <class R>
void require_same(const ZetaRoutes<R>& r) {
  const long i = first_difference(r.power_sums, r.euler_product);
  if (i >= 0)
    throw Error(Errc::RouteMismatch, "routes differ at t^" + std::to_string(i) + ": " +
                                         describe(r.power_sums[i]) + " vs " + describe(r.euler_product[i]));
}

}  // namespace

Series<Integer> hw_euler_product(const ClosedPointTally& tally, unsigned T) {
  if (T > tally.r_max) throw Error(Errc::TallyTooShallow, "tally has depth " + std::to_string(tally.r_max));
  Series<Integer> z = Series<Integer>::one(Integer(1), T);
  for (unsigned r = 1; r <= T; ++r) {
    const Integer a = tally.degree_count(r);
    if (a != 0) z *= euler_factor(Integer(1), r, a, T);
  }
  return z;
}

Series<CyclotomicInt> exp_euler_product(const ClosedPointTally& tally, unsigned T) {
  if (T > tally.r_max) throw Error(Errc::TallyTooShallow, "tally has depth " + std::to_string(tally.r_max));
  const u64 p = tally.p;
  Series<CyclotomicInt> z = Series<CyclotomicInt>::one(CyclotomicInt(p), T);
  for (u64 e = 0; e < p; ++e) {
    const CyclotomicInt alpha = CyclotomicInt::root_of_unity(p, static_cast<std::int64_t>(e));
    for (unsigned r = 1; r <= T; ++r) {
      const Integer& a = tally.at(r, e);
      if (a != 0) z *= euler_factor(alpha, r, a, T);
    }
  }
  return z;
}

ZetaRoutes<Integer> hw_zeta_routes(const VarietySpec& x, const FiniteField& fq, unsigned T, const CountOptions& opts) {
  if (T == 0) throw Error(Errc::InsufficientOrder, "order must be positive");
  const auto levels = level_histograms(x, fq, fq.zero(), T, opts);
  std::vector<Integer> N;
  for (const auto& h : levels) {
    Integer s = 0;
    for (const auto& v : h) s += v;
    N.push_back(s);
  }
  const ClosedPointTally tally = tally_from_histograms(fq.size(), levels);
  return {exp_power_sums(N, T), hw_euler_product(tally, T)};
}

ZetaRoutes<CyclotomicInt> exp_zeta_routes(const VarietySpec& x, const AdditiveCharacter& chi, unsigned T,
                                          const CountOptions& opts) {
  if (T == 0) throw Error(Errc::InsufficientOrder, "order must be positive");
  x.validate();
  const auto levels = level_histograms(x, chi.field(), chi.twist(), T, opts);
  std::vector<CyclotomicInt> N;
  for (const auto& h : levels) N.push_back(histogram_value(h));
  const ClosedPointTally tally = tally_from_histograms(chi.field().size(), levels);
  return {exp_power_sums(N, T), exp_euler_product(tally, T)};
}

Series<Integer> hw_zeta(const VarietySpec& x, const FiniteField& fq, unsigned T, const CountOptions& opts) {
  auto r = hw_zeta_routes(x, fq, T, opts);
  require_same(r);
  return r.euler_product;
}

Series<CyclotomicInt> exp_zeta(const VarietySpec& x, const AdditiveCharacter& chi, unsigned T,
                               const CountOptions& opts) {
  auto r = exp_zeta_routes(x, chi, T, opts);
  require_same(r);
  return r.euler_product;
}

KapranovReport kapranov_check(const VarietySpec& x, const AdditiveCharacter& chi, unsigned n_max,
                              const CountOptions& opts) {
  const u64 p = chi.field().p();
  const unsigned depth = std::max(n_max, 1u);
  const auto levels = level_histograms(x, chi.field(), chi.twist(), depth, opts);
  const ClosedPointTally tally = tally_from_histograms(chi.field().size(), levels);
  std::vector<CyclotomicInt> N;
  for (const auto& h : levels) N.push_back(histogram_value(h));
  const Series<CyclotomicInt> z = exp_power_sums(N, depth);
  KapranovReport report;
  for (unsigned n = 0; n <= n_max; ++n) {
    const SymDivisorSum s = sym_divisors(tally, n, opts.budget);
    KapranovRow row{n, z[n], s.sum, s.count};
    if (!(row.zeta_coefficient == row.divisor_sum))
      throw Error(Errc::CoefficientMismatch, "t^" + std::to_string(n) + ": zeta coefficient " +
                                                 describe(row.zeta_coefficient) + " vs divisor sum " +
                                                 describe(row.divisor_sum) + " over Z[zeta_" + std::to_string(p) +
                                                 "]");
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace zetalab
