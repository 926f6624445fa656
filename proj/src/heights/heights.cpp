#include "zetalab/heights/heights.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <numeric>
#include <thread>

#include <Eigen/Dense>

#include "zetalab/cyclofield/modular.hpp"
#include "zetalab/error.hpp"

namespace zetalab {

using i128 = __int128;

IntVec normalize(const IntVec& coords) {
  std::int64_t g = 0;
  for (auto c : coords) g = std::gcd(g, c);
  if (g == 0) throw Error(Errc::ZeroVector, "all coordinates are zero");
  IntVec r(coords);
  std::size_t j = 0;
  while (r[j] == 0) ++j;
  if (r[j] < 0) g = -g;
  for (auto& c : r) c /= g;
  return r;
}

Integer weil_height(const IntVec& point, unsigned m) {
  std::int64_t mx = 0;
  for (auto c : point) mx = std::max(mx, c < 0 ? -c : c);
  Integer h;
  mpz_ui_pow_ui(h.get_mpz_t(), static_cast<unsigned long>(mx), m);
  return h;
}

ProductFormulaReport verify_product_formula(const Rational& lambda) {
  if (lambda == 0) throw Error(Errc::ZeroInput, "lambda must be nonzero");
  ProductFormulaReport rep;
  rep.factors.push_back({0, abs(lambda)});
  rep.product = abs(lambda);
  const Integer num = abs(lambda.get_num()), den = lambda.get_den();
  if (!num.fits_ulong_p() || !den.fits_ulong_p())
    throw Error(Errc::BudgetExceeded, "numerator and denominator must fit in 64 bits");
  std::vector<u64> primes = prime_factors(num.get_ui());
  for (u64 l : prime_factors(den.get_ui())) primes.push_back(l);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (u64 l : primes) {
    // v_l(lambda) = v_l(num) - v_l(den); |lambda|_l = l^{-v}.
    long v = 0;
    Integer t = num;
    while (mpz_divisible_ui_p(t.get_mpz_t(), l)) {
      t /= static_cast<unsigned long>(l);
      ++v;
    }
    t = den;
    while (mpz_divisible_ui_p(t.get_mpz_t(), l)) {
      t /= static_cast<unsigned long>(l);
      --v;
    }
    Integer pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), l, static_cast<unsigned long>(v < 0 ? -v : v));
    const Rational abs_l = v >= 0 ? Rational(Integer(1), pw) : Rational(pw);
    rep.factors.push_back({l, abs_l});
    rep.product *= abs_l;
  }
  if (rep.product != 1) throw Error(Errc::Mismatch, "product over places is " + rep.product.get_str());
  return rep;
}

namespace {

struct CompiledPoly {
  struct Term {
    i128 coef;
    std::vector<unsigned> exps;
  };
  std::vector<Term> terms;

  i128 eval(const std::int64_t* x) const {
    i128 acc = 0;
    for (const auto& t : terms) {
      i128 v = t.coef;
      for (std::size_t i = 0; i < t.exps.size(); ++i)
        for (unsigned k = 0; k < t.exps[i]; ++k) v *= x[i];
      acc += v;
    }
    return acc;
  }
};

struct CompiledSpec {
  unsigned n = 0;
  std::vector<CompiledPoly> eqs, ineqs;

  bool contains(const std::int64_t* x) const {
    for (const auto& g : eqs)
      if (g.eval(x) != 0) return false;
    for (const auto& h : ineqs)
      if (h.eval(x) == 0) return false;
    return true;
  }
};

CompiledSpec compile(const VarietySpec& v, std::uint64_t R) {
  v.validate();
  if (!v.projective()) throw Error(Errc::Mismatch, "heights need a projective spec");
  CompiledSpec c;
  c.n = v.nvars();
  auto one = [&](const Polynomial& g) {
    CompiledPoly cp;
    long double bound = 0;
    for (const auto& [e, coef] : g.terms()) {
      cp.terms.push_back({static_cast<i128>(coef), e});
      unsigned deg = 0;
      for (unsigned d : e) deg += d;
      bound += std::fabs(static_cast<long double>(coef)) * std::pow(static_cast<long double>(R), deg);
    }
    if (bound > std::ldexp(1.0L, 120))
      throw Error(Errc::BudgetExceeded, "polynomial values exceed 128-bit evaluation at radius " + std::to_string(R));
    return cp;
  };
  for (const auto& g : v.equations) c.eqs.push_back(one(g));
  for (const auto& h : v.inequations) c.ineqs.push_back(one(h));
  return c;
}

void check_budget(unsigned n, std::uint64_t R, std::uint64_t budget) {
  const long double total = std::pow(2.0L * static_cast<long double>(R) + 1.0L, n);
  if (total > static_cast<long double>(budget))
    throw Error(Errc::BudgetExceeded, std::to_string(2 * R + 1) + "^" + std::to_string(n) +
                                          " coordinate tuples at radius " + std::to_string(R));
}

/// Visits normalized points of V with max |x_i| <= R and x_0 in [lo, hi].
template <class Visit>
void walk(const CompiledSpec& c, std::int64_t R, std::int64_t lo, std::int64_t hi, Visit&& visit) {
  const unsigned n = c.n;
  std::vector<std::int64_t> x(n, -R);
  for (std::int64_t x0 = lo; x0 <= hi; ++x0) {
    x[0] = x0;
    for (unsigned i = 1; i < n; ++i) x[i] = -R;
    while (true) {
      std::size_t j = 0;
      while (j < n && x[j] == 0) ++j;
      if (j < n && x[j] > 0) {
        std::int64_t g = 0;
        for (unsigned i = j; i < n && g != 1; ++i) g = std::gcd(g, x[i]);
        if (g == 1 && c.contains(x.data())) visit(x);
      }
      bool carry = true;
      for (unsigned i = n; carry && i > 1;) {
        --i;
        if (x[i] < R) {
          ++x[i];
          carry = false;
        } else {
          x[i] = -R;
        }
      }
      if (carry) break;
    }
  }
}

std::int64_t radius_of(const std::vector<std::int64_t>& x) {
  std::int64_t r = 0;
  for (auto v : x) r = std::max(r, v < 0 ? -v : v);
  return r;
}

}  // namespace

std::vector<std::uint64_t> count_by_radius(const VarietySpec& v, std::uint64_t R, const HeightOptions& opts) {
  const CompiledSpec c = compile(v, R);
  check_budget(c.n, R, opts.budget);
  const auto r = static_cast<std::int64_t>(R);
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(R + 1)));
  std::vector<std::vector<std::uint64_t>> shards(threads, std::vector<std::uint64_t>(R + 1, 0));
  auto run = [&](unsigned t) {
    // First coordinate is never negative on a normalized point.
    const std::int64_t lo = static_cast<std::int64_t>(t) * (r + 1) / threads;
    const std::int64_t hi = static_cast<std::int64_t>(t + 1) * (r + 1) / threads - 1;
    auto& counts = shards[t];
    walk(c, r, lo, hi, [&](const std::vector<std::int64_t>& x) { ++counts[radius_of(x)]; });
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run, t);
    for (auto& th : pool) th.join();
  }
  std::vector<std::uint64_t> total(R + 1, 0);
  for (const auto& s : shards)
    for (std::size_t i = 0; i <= R; ++i) total[i] += s[i];
  return total;
}

std::uint64_t height_radius(std::uint64_t B, unsigned m) {
  if (m == 0) throw Error(Errc::DegreeZero, "bundle degree must be positive");
  auto r = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<long double>(B), 1.0L / m)));
  auto pw = [&](std::uint64_t x) {
    long double v = 1;
    for (unsigned i = 0; i < m; ++i) v *= static_cast<long double>(x);
    return v;
  };
  while (r > 0 && pw(r) > static_cast<long double>(B)) --r;
  while (pw(r + 1) <= static_cast<long double>(B)) ++r;
  return r;
}

std::uint64_t count_points(const VarietySpec& v, unsigned m, std::uint64_t B, const HeightOptions& opts) {
  const auto counts = count_by_radius(v, height_radius(B, m), opts);
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::vector<double> sorted_heights(const VarietySpec& v, unsigned m, std::uint64_t B, const HeightOptions& opts) {
  const auto counts = count_by_radius(v, height_radius(B, m), opts);
  std::vector<double> out;
  for (std::size_t r = 0; r < counts.size(); ++r)
    out.insert(out.end(), counts[r], std::pow(static_cast<double>(r), m));
  return out;
}

HeightCountTable height_table(const VarietySpec& v, unsigned m, const std::vector<std::uint64_t>& bounds,
                              const HeightOptions& opts) {
  HeightCountTable tbl;
  tbl.m = m;
  tbl.bounds = bounds;
  tbl.variety = v.canonical();
  if (bounds.empty()) return tbl;
  if (!std::is_sorted(bounds.begin(), bounds.end()))
    throw Error(Errc::InsufficientSamples, "bounds must be increasing");
  const auto counts = count_by_radius(v, height_radius(bounds.back(), m), opts);
  std::vector<std::uint64_t> cum(counts.size());
  std::partial_sum(counts.begin(), counts.end(), cum.begin());
  for (auto B : bounds) tbl.counts.push_back(cum[height_radius(B, m)]);
  return tbl;
}

std::vector<std::uint64_t> dyadic_grid(std::uint64_t top) {
  std::vector<std::uint64_t> g;
  for (std::uint64_t b = 1; b < top; b *= 2) g.push_back(b);
  g.push_back(top);
  return g;
}

long double height_zeta_partial(const VarietySpec& v, unsigned m, double s, std::uint64_t B,
                                const HeightOptions& opts) {
  const auto counts = count_by_radius(v, height_radius(B, m), opts);
  long double sum = 0;
  for (std::size_t r = 1; r < counts.size(); ++r)
    if (counts[r]) sum += counts[r] * std::pow(static_cast<long double>(r), -static_cast<long double>(m) * s);
  return sum;
}

namespace {

struct Samples {
  std::vector<double> logB, logN, B;
};

Samples top_half(const HeightCountTable& tbl) {
  const std::size_t s = tbl.bounds.size();
  if (s < 4 || tbl.counts.size() != s)
    throw Error(Errc::InsufficientSamples, std::to_string(s) + " samples, need at least 4");
  if (static_cast<double>(tbl.bounds.back()) < 10.0 * static_cast<double>(tbl.bounds.front()))
    throw Error(Errc::InsufficientSamples, "grid spans less than one decade");
  Samples out;
  for (std::size_t i = s / 2; i < s; ++i) {
    if (tbl.counts[i] == 0 || tbl.bounds[i] == 0) throw Error(Errc::InsufficientSamples, "zero count in the top half");
    out.B.push_back(static_cast<double>(tbl.bounds[i]));
    out.logB.push_back(std::log(static_cast<double>(tbl.bounds[i])));
    out.logN.push_back(std::log(static_cast<double>(tbl.counts[i])));
  }
  return out;
}

/// Fits y = a + b x; returns (a, b, rms residual).
std::tuple<double, double, double> line_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const auto k = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd A(k, 2);
  Eigen::VectorXd b(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    A(i, 0) = 1;
    A(i, 1) = x[i];
    b(i) = y[i];
  }
  const Eigen::Vector2d sol = A.colPivHouseholderQr().solve(b);
  const double rms = std::sqrt((A * sol - b).squaredNorm() / static_cast<double>(k));
  return {sol(0), sol(1), rms};
}

}  // namespace

double abscissa_estimate(const HeightCountTable& tbl) {
  const Samples s = top_half(tbl);
  return std::get<1>(line_fit(s.logB, s.logN));
}

AsymptoticFit asymptotic_fit(const HeightCountTable& tbl, double max_residual) {
  const Samples s = top_half(tbl);
  std::optional<AsymptoticFit> best;
  for (unsigned t = 0; t <= 3; ++t) {
    if (t > 0 && s.B.front() < 3) break;
    std::vector<double> y(s.logN);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= t * std::log(s.logB[i]);
    const auto [a, beta, rms] = line_fit(s.logB, y);
    if (!best || rms < best->residual) best = AsymptoticFit{beta, t, std::exp(a), rms};
  }
  if (best->residual > max_residual)
    throw Error(Errc::PoorFit, "best residual " + std::to_string(best->residual) + " at t=" + std::to_string(best->t));
  return *best;
}

const char* accumulation_name(Accumulation a) {
  switch (a) {
    case Accumulation::Strong: return "strong";
    case Accumulation::Weak: return "weak";
    case Accumulation::None: return "none";
  }
  return "none";
}

AccumulationReport accumulation_test(const VarietySpec& v, const VarietySpec& u, unsigned m,
                                     const std::vector<std::uint64_t>& grid, const AccumulationThresholds& th,
                                     const HeightOptions& opts) {
  if (grid.empty()) throw Error(Errc::InsufficientSamples, "empty grid");
  const std::uint64_t R = height_radius(grid.back(), m);
  const CompiledSpec cv = compile(v, R), cu = compile(u, R);
  if (cv.n != cu.n) throw Error(Errc::NotASubvariety, "ambient dimensions differ");
  check_budget(cv.n, R, opts.budget);
  walk(cv, static_cast<std::int64_t>(R), 0, static_cast<std::int64_t>(R), [&](const std::vector<std::int64_t>& x) {
    if (!cu.contains(x.data())) {
      std::string w;
      for (auto c : x) w += (w.empty() ? "(" : ":") + std::to_string(c);
      throw Error(Errc::NotASubvariety, "point " + w + ") of V is not on U");
    }
  });
  const auto nv = height_table(v, m, grid, opts), nu = height_table(u, m, grid, opts);
  AccumulationReport rep;
  rep.grid = grid;
  rep.thresholds = th;
  for (std::size_t i = 0; i < grid.size(); ++i)
    rep.ratios.push_back(nu.counts[i] ? static_cast<double>(nv.counts[i]) / static_cast<double>(nu.counts[i]) : 0.0);
  const std::size_t half = grid.size() / 2;
  const double top = rep.ratios.back();
  const double lowest = *std::min_element(rep.ratios.begin() + half, rep.ratios.end());
  if (top > th.strong && top >= rep.ratios[half])
    rep.verdict = Accumulation::Strong;
  else if (lowest > th.weak)
    rep.verdict = Accumulation::Weak;
  else
    rep.verdict = Accumulation::None;
  return rep;
}

SchanuelReport schanuel_check(unsigned n, std::uint64_t B, const HeightOptions& opts) {
  SchanuelReport rep;
  rep.n = n;
  rep.B = B;
  rep.count = count_points(catalog::projective_space(n), 1, B, opts);
  rep.ratio = static_cast<double>(rep.count) / std::pow(static_cast<double>(B), n + 1);
  rep.limit = std::pow(2.0, n) / boost::math::zeta(static_cast<double>(n + 1));
  rep.relative_error = std::fabs(rep.ratio - rep.limit) / rep.limit;
  return rep;
}

namespace {

std::uint64_t product_count(const std::vector<double>& lam, const std::vector<double>& mu, double B) {
  // Two pointers: as lambda_i grows, the admissible prefix of mu shrinks.
  std::uint64_t total = 0;
  std::size_t j = mu.size();
  for (double l : lam) {
    while (j > 0 && l * mu[j - 1] >= B) --j;
    if (j == 0) break;
    total += j;
  }
  return total;
}

}  // namespace

MergeReport merge_product_counts(const Family& lambda, const Family& mu, double B, const ProductLaw& law) {
  const auto& lam = lambda.values;
  const auto& mv = mu.values;
  if (lam.empty() || mv.empty()) throw Error(Errc::PrefixTooShort, "empty family");
  if (!std::is_sorted(lam.begin(), lam.end()) || !std::is_sorted(mv.begin(), mv.end()))
    throw Error(Errc::PrefixTooShort, "families must be nondecreasing");
  if (!lambda.complete && lam.back() * mv.front() < B)
    throw Error(Errc::PrefixTooShort, "lambda prefix ends at " + std::to_string(lam.back()) + " below B/mu_1");
  if (!mu.complete && mv.back() * lam.front() < B)
    throw Error(Errc::PrefixTooShort, "mu prefix ends at " + std::to_string(mv.back()) + " below B/lambda_1");
  MergeReport rep;
  rep.count = product_count(lam, mv, B);
  rep.beta_constant = boost::math::beta(static_cast<double>(law.r + 1), static_cast<double>(law.s + 1));
  rep.predicted = rep.beta_constant * law.c_lambda * law.c_mu * B * std::pow(std::log(B), law.r + law.s + 1);
  rep.ratio = static_cast<double>(rep.count) / rep.predicted;
  if (B >= 10) {
    HeightCountTable tbl;
    for (double b = 1; b < B; b *= 2) tbl.bounds.push_back(static_cast<std::uint64_t>(b));
    tbl.bounds.push_back(static_cast<std::uint64_t>(B));
    for (auto b : tbl.bounds) tbl.counts.push_back(product_count(lam, mv, static_cast<double>(b)));
    try {
      rep.fit = asymptotic_fit(tbl, 1.0);
    } catch (const Error&) {
      rep.fit.reset();
    }
  }
  return rep;
}

}  // namespace zetalab
