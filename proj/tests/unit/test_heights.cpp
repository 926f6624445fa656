#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "zetalab/error.hpp"
#include "zetalab/heights/heights.hpp"

using namespace zetalab;

namespace {

/// Distinct projective points among all integer tuples of radius <= R,
/// deduplicated by dividing out the gcd and the sign.
std::uint64_t brute_count(const VarietySpec& v, std::int64_t R) {
  const unsigned n = v.nvars();
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::int64_t> x(n, -R);
  while (true) {
    std::vector<long> xl(x.begin(), x.end());
    bool ok = std::any_of(x.begin(), x.end(), [](std::int64_t c) { return c != 0; });
    for (const auto& g : v.equations) ok = ok && g.eval(xl) == 0;
    for (const auto& h : v.inequations) ok = ok && h.eval(xl) != 0;
    if (ok) {
      std::int64_t g = 0;
      for (auto c : x) g = std::gcd(g, c);
      std::vector<std::int64_t> key(x);
      for (auto& c : key) c /= g;
      auto neg = key;
      for (auto& c : neg) c = -c;
      seen.insert(std::max(key, neg));
    }
    std::size_t i = n;
    while (i > 0 && x[i - 1] == R) x[--i] = -R;
    if (i == 0) break;
    ++x[i - 1];
  }
  return seen.size();
}

const VarietySpec kLine = VarietySpec::projective(2).equation("x1");
const VarietySpec kConic = VarietySpec::projective(2).equation("x0*x2 - x1^2");
const VarietySpec kConic2 = VarietySpec::projective(2).equation("x0*x1 - x2^2");

}  // namespace

TEST_CASE("normalization and Weil height") {
  CHECK(normalize({2, 4}) == IntVec{1, 2});
  CHECK(normalize({0, -3}) == IntVec{0, 1});
  CHECK(normalize({-2, -6}) == IntVec{1, 3});
  CHECK_THROWS_WITH_AS(normalize({0, 0}), doctest::Contains("ZeroVector"), Error);

  CHECK(weil_height({1, 2}, 1) == 2);
  CHECK(weil_height({1, 1, 1}, 1) == 1);
  CHECK(weil_height({3, 5, 7}, 2) == 49);

  std::mt19937 rng(1);
  std::uniform_int_distribution<std::int64_t> c(-50, 50), lam(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    IntVec x{c(rng), c(rng), c(rng)};
    if (x == IntVec{0, 0, 0}) continue;
    std::int64_t l = lam(rng);
    if (l == 0) l = 1;
    IntVec y(x);
    for (auto& v : y) v *= l;
    CHECK(normalize(y) == normalize(x));
    CHECK(weil_height(normalize(y), 2) == weil_height(normalize(x), 2));
    CHECK(normalize(normalize(x)) == normalize(x));
  }
}

TEST_CASE("product formula") {
  CHECK(verify_product_formula(Rational(1)).factors.size() == 1);
  auto two = verify_product_formula(Rational(2));
  REQUIRE(two.factors.size() == 2);
  CHECK(two.factors[1].absolute == Rational(1, 2));
  auto r = verify_product_formula(Rational(-3, 4));
  CHECK(r.factors[0].absolute == Rational(3, 4));
  CHECK(r.product == 1);
  CHECK_THROWS_WITH_AS(verify_product_formula(Rational(0)), doctest::Contains("ZeroInput"), Error);
  std::mt19937 rng(2);
  std::uniform_int_distribution<long> d(1, 100000);
  for (int i = 0; i < 50; ++i) {
    Rational q(d(rng), d(rng));
    q.canonicalize();
    CHECK(verify_product_formula(q).product == 1);
  }
}

TEST_CASE("bounded height counts") {
  CHECK(count_points(catalog::projective_space(1), 1, 1) == 4);
  CHECK(count_points(catalog::projective_space(2), 1, 1) == 13);
  CHECK(count_points(kConic, 1, 2) == 4);
  CHECK(count_points(catalog::projective_space(1), 2, 3) == 4);

  for (const auto& v : {catalog::projective_space(1), catalog::projective_space(2), kLine, kConic,
                        VarietySpec::projective(2).equation("x0^2 + x1^2 - x2^2"),
                        VarietySpec::projective(2).inequation("x0*x1")})
    for (std::int64_t R : {1, 2, 3, 5}) {
      INFO(v.canonical(), " R=", R);
      CHECK(count_points(v, 1, static_cast<std::uint64_t>(R)) == brute_count(v, R));
    }

  // Disjoint pieces add.
  const VarietySpec rest = VarietySpec::projective(2).inequation("x1");
  for (std::uint64_t B : {3, 10, 25})
    CHECK(count_points(catalog::projective_space(2), 1, B) == count_points(kLine, 1, B) + count_points(rest, 1, B));

  HeightOptions par;
  par.threads = 3;
  CHECK(count_by_radius(kConic, 40, par) == count_by_radius(kConic, 40));

  HeightOptions tiny;
  tiny.budget = 100;
  CHECK_THROWS_WITH_AS(count_points(catalog::projective_space(2), 1, 10, tiny), doctest::Contains("BudgetExceeded"),
                       Error);
  CHECK(height_radius(1000000, 2) == 1000);
  CHECK(height_radius(26, 3) == 2);
}

TEST_CASE("height zeta partial sums") {
  const VarietySpec pt = VarietySpec::projective(1).equation("x1");
  CHECK(height_zeta_partial(pt, 1, 2.0, 10) == doctest::Approx(1.0));
  long double prev = 0;
  for (std::uint64_t B : dyadic_grid(512)) {
    const long double z = height_zeta_partial(catalog::projective_space(1), 1, 3.0, B);
    CHECK(z >= prev);
    prev = z;
  }
  CHECK(prev < 10);
  CHECK(height_zeta_partial(catalog::projective_space(1), 1, 1.5, 512) >
        1.5 * height_zeta_partial(catalog::projective_space(1), 1, 1.5, 64));
}

TEST_CASE("convergence boundary estimates") {
  CHECK(abscissa_estimate(height_table(catalog::projective_space(1), 1, dyadic_grid(1000))) ==
        doctest::Approx(2.0).epsilon(0.05));
  CHECK(abscissa_estimate(height_table(catalog::projective_space(2), 1, dyadic_grid(60))) ==
        doctest::Approx(3.0).epsilon(0.1));
  CHECK(abscissa_estimate(height_table(catalog::projective_space(1), 2, dyadic_grid(1000000))) ==
        doctest::Approx(1.0).epsilon(0.05));
  CHECK_THROWS_WITH_AS(abscissa_estimate(height_table(catalog::projective_space(1), 1, {1, 2, 4})),
                       doctest::Contains("InsufficientSamples"), Error);
  CHECK_THROWS_WITH_AS(abscissa_estimate(height_table(catalog::projective_space(1), 1, {2, 3, 4, 5, 6})),
                       doctest::Contains("InsufficientSamples"), Error);
}

TEST_CASE("asymptotic fits") {
  auto p1 = asymptotic_fit(height_table(catalog::projective_space(1), 1, dyadic_grid(4096)));
  CHECK(p1.t == 0);
  CHECK(p1.beta == doctest::Approx(2.0).epsilon(0.05));

  HeightCountTable div;
  for (std::uint64_t B : dyadic_grid(1u << 20)) {
    std::uint64_t s = 0;
    for (std::uint64_t i = 1; i <= B; ++i) s += B / i;
    div.bounds.push_back(B);
    div.counts.push_back(s);
  }
  auto d = asymptotic_fit(div);
  CHECK(d.t == 1);
  CHECK(d.beta == doctest::Approx(1.0).epsilon(0.05));

  HeightCountTable flat;
  flat.bounds = dyadic_grid(1000);
  flat.counts.assign(flat.bounds.size(), 7);
  auto f = asymptotic_fit(flat);
  CHECK(f.t == 0);
  CHECK(std::fabs(f.beta) < 1e-9);

  HeightCountTable wild;
  wild.bounds = dyadic_grid(1000);
  for (std::size_t i = 0; i < wild.bounds.size(); ++i) wild.counts.push_back(i % 2 ? 1000 : 1);
  CHECK_THROWS_WITH_AS(asymptotic_fit(wild), doctest::Contains("PoorFit"), Error);
}

TEST_CASE("accumulating subvarieties") {
  const VarietySpec line_conic = VarietySpec::projective(2).equation("x1*(x0*x2 - x1^2)");
  const VarietySpec triple = VarietySpec::projective(2).equation("x1*(x0*x2 - x1^2)*(x0*x1 - x2^2)");
  const VarietySpec two_lines = VarietySpec::projective(2).equation("x1*x2");
  const auto grid = dyadic_grid(60);

  CHECK(accumulation_test(kLine, line_conic, 1, grid).verdict == Accumulation::Strong);
  CHECK(accumulation_test(kConic, line_conic, 1, grid).verdict == Accumulation::None);
  auto w = accumulation_test(kLine, two_lines, 1, grid);
  CHECK(w.verdict == Accumulation::Weak);
  CHECK(w.ratios.back() == doctest::Approx(0.5).epsilon(0.2));

  CHECK(accumulation_test(line_conic, triple, 1, grid).verdict == Accumulation::Strong);
  CHECK(accumulation_test(kLine, triple, 1, grid).verdict == Accumulation::Strong);

  CHECK_THROWS_WITH_AS(accumulation_test(kConic, kLine, 1, grid), doctest::Contains("NotASubvariety"), Error);

  AccumulationThresholds strict;
  strict.strong = 0.999;
  CHECK(accumulation_test(kLine, line_conic, 1, grid, strict).verdict == Accumulation::Weak);
}

TEST_CASE("Schanuel constants") {
  auto one = schanuel_check(1, 1);
  CHECK(one.count == 4);
  auto p1 = schanuel_check(1, 500);
  CHECK(p1.limit == doctest::Approx(12.0 / (M_PI * M_PI)));
  CHECK(p1.relative_error < 0.05);
  CHECK(schanuel_check(2, 60).relative_error < 0.1);
}

TEST_CASE("products of counting families") {
  Family nat;
  for (int i = 1; i <= 10000; ++i) nat.values.push_back(i);
  const double B = 10000;
  auto rep = merge_product_counts(nat, nat, B);
  std::uint64_t naive = 0;
  for (int i = 1; i <= 10000; ++i)
    for (int j = 1; j <= 10000 && static_cast<double>(i) * j < B; ++j) ++naive;
  CHECK(rep.count == naive);
  CHECK(rep.beta_constant == doctest::Approx(1.0));
  CHECK(std::fabs(rep.ratio - 1) < 0.15);
  REQUIRE(rep.fit);
  CHECK(rep.fit->t == 1);

  Family unit{{1.0}, true};
  std::uint64_t below = 0;
  for (double v : nat.values) below += v < B;
  CHECK(merge_product_counts(nat, unit, B).count == below);

  Family short_prefix;
  for (int i = 1; i <= 10; ++i) short_prefix.values.push_back(i);
  CHECK_THROWS_WITH_AS(merge_product_counts(short_prefix, nat, B), doctest::Contains("PrefixTooShort"), Error);

  ProductLaw law;
  law.r = 1;
  law.s = 2;
  CHECK(merge_product_counts(nat, nat, B, law).beta_constant == doctest::Approx(1.0 / 12.0));

  // Heights of P^1 under O(2): each family grows like B, the product like B log B.
  Family h;
  h.values = sorted_heights(catalog::projective_space(1), 2, 1000000);
  auto hp = merge_product_counts(h, h, 1000000);
  REQUIRE(hp.fit);
  CHECK(hp.fit->t == 1);
}
