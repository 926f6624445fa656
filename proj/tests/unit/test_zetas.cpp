#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "zetalab/error.hpp"
#include "zetalab/zetas/reconstruct.hpp"
#include "zetalab/zetas/zeta.hpp"

using namespace zetalab;

namespace {

Integer ipow(u64 q, unsigned n) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, n);
  return r;
}

/// exp(L) = sum_k L^k / k! over Q(zeta_p), L = sum N_m t^m / m.
Series<CycRational> exp_by_powers(const std::vector<CyclotomicInt>& N, unsigned T) {
  const u64 p = N[0].order();
  std::vector<CycRational> l(T + 1, CycRational(p));
  for (unsigned m = 1; m <= T; ++m) l[m] = CycRational(N[m - 1], Integer(m));
  const Series<CycRational> L(l);
  Series<CycRational> term = Series<CycRational>::one(CycRational(p), T);
  Series<CycRational> sum = term;
  for (unsigned k = 1; k <= T; ++k) {
    term *= L;
    Series<CycRational> scaled = term;
    for (unsigned i = 0; i <= T; ++i) scaled[i] = term[i] * CycRational(CyclotomicInt(p, Integer(1)), Integer(k));
    term = scaled;
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("series arithmetic and exp of power sums") {
  Series<Integer> a(std::vector<Integer>{1, 2, 3});
  Series<Integer> b(std::vector<Integer>{1, -1, 0, 5});
  CHECK((a * b) == Series<Integer>(std::vector<Integer>{1, 1, 1}));
  CHECK((a + b).order() == 2);

  // N_m = q^m gives 1/(1 - qt).
  std::vector<Integer> N;
  for (unsigned m = 1; m <= 10; ++m) N.push_back(ipow(3, m));
  auto z = exp_power_sums(N, 10);
  for (unsigned n = 0; n <= 10; ++n) CHECK(z[n] == ipow(3, n));
  CHECK(power_sums(z) == N);

  CHECK_THROWS_WITH_AS(exp_power_sums(std::vector<Integer>{1, 0}, 2), doctest::Contains("NonIntegralCoefficient"),
                       Error);

  // (1 - t)^{-2} = sum (n+1) t^n; (1 - t)^{2} = 1 - 2t + t^2.
  auto f = euler_factor(Integer(1), 1, Integer(2), 5);
  for (unsigned n = 0; n <= 5; ++n) CHECK(f[n] == n + 1);
  auto g = euler_factor(Integer(1), 1, Integer(-2), 5);
  CHECK(g == Series<Integer>(std::vector<Integer>{1, -2, 1, 0, 0, 0}));
  auto h = euler_factor(Integer(1), 2, Integer(1), 5);
  CHECK(h == Series<Integer>(std::vector<Integer>{1, 0, 1, 0, 1, 0}));
}

TEST_CASE("Hasse-Weil closed forms") {
  for (auto [p, k] : std::vector<std::pair<u64, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}}) {
    FiniteField fq = build_field(p, k);
    const u64 q = fq.size();
    auto a1 = hw_zeta(catalog::affine_space(1), fq, 12);
    auto p1 = hw_zeta(catalog::projective_space(1), fq, 12);
    auto gm = hw_zeta(catalog::gm(), fq, 12);
    for (unsigned n = 0; n <= 12; ++n) {
      CHECK(a1[n] == ipow(q, n));
      Integer s = 0;
      for (unsigned i = 0; i <= n; ++i) s += ipow(q, i);
      CHECK(p1[n] == s);
      CHECK(gm[n] == (n == 0 ? Integer(1) : ipow(q, n) - ipow(q, n - 1)));
    }
  }
  auto empty = hw_zeta(VarietySpec::affine(1).equation("1"), build_field(3, 1), 6);
  CHECK(empty == Series<Integer>::one(Integer(1), 6));
}

TEST_CASE("exp zeta examples") {
  FiniteField f2 = build_field(2, 1);
  CHECK(exp_zeta(catalog::affine_line_id(), AdditiveCharacter(f2, f2.one()), 8) ==
        Series<CyclotomicInt>::one(CyclotomicInt(2), 8));
  auto gm = exp_zeta(catalog::gm_id(), AdditiveCharacter(f2, f2.one()), 8);
  CHECK(gm[0] == CyclotomicInt(2, Integer(1)));
  CHECK(gm[1] == CyclotomicInt(2, Integer(-1)));
  for (unsigned n = 2; n <= 8; ++n) CHECK(gm[n].is_zero());

  // Trivial character reduces to the Hasse-Weil zeta.
  FiniteField f3 = build_field(3, 1);
  auto hw = hw_zeta(catalog::circle_xy(), f3, 8);
  auto ez = exp_zeta(catalog::circle_xy(), AdditiveCharacter(f3, f3.zero()), 8);
  for (unsigned n = 0; n <= 8; ++n) CHECK(ez[n] == CyclotomicInt(3, hw[n]));

  // x^2 on A^1 over F_3: N_m = -(-g)^m, so the zeta is 1 + g t with g = 1 + 2 zeta.
  auto sq = exp_zeta(catalog::affine_line_square(), AdditiveCharacter(f3, f3.one()), 8);
  std::vector<Integer> g{1, 2};
  CHECK(sq[1] == CyclotomicInt::from_powers(3, g));
  for (unsigned n = 2; n <= 8; ++n) CHECK(sq[n].is_zero());
}

TEST_CASE("exp zeta against brute counts and exp by powers") {
  const std::vector<VarietySpec> corpus{catalog::affine_line_square(), catalog::gm_id(), catalog::circle_xy(),
                                        catalog::torus_sum(),
                                        VarietySpec::affine(2).equation("x1^2 - x0^3 - 1").with_f("x0")};
  for (auto [p, k] : std::vector<std::pair<u64, unsigned>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}}) {
    FiniteField fq = build_field(p, k);
    for (const auto& spec : corpus) {
      unsigned T = 0;
      while (std::pow(static_cast<double>(fq.size()), (T + 1) * spec.nvars()) <= 3e4) ++T;
      if (T == 0) continue;
      INFO(spec.canonical(), " p=", p, " k=", k, " T=", T);
      std::vector<CyclotomicInt> N;
      for (unsigned m = 1; m <= T; ++m) N.push_back(histogram_value(oracle::histogram(spec, fq, fq.one(), m)));
      auto want = exp_by_powers(N, T);
      auto got = exp_zeta(spec, AdditiveCharacter(fq, fq.one()), T);
      for (unsigned n = 0; n <= T; ++n) CHECK(CycRational(got[n]) == want[n]);
    }
  }
}

TEST_CASE("exp zeta is multiplicative on disjoint unions") {
  for (u64 p : {2, 3, 5}) {
    FiniteField fq = build_field(p, 1);
    AdditiveCharacter chi(fq, fq.one());
    const VarietySpec x = catalog::circle_xy(), u = catalog::gm_id();
    auto lhs = exp_zeta(disjoint_union(x, u), chi, 6);
    auto rhs = exp_zeta(x, chi, 6) * exp_zeta(u, chi, 6);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Kapranov zeta by divisor enumeration") {
  FiniteField f2 = build_field(2, 1);
  auto rep = kapranov_check(catalog::affine_space(1), AdditiveCharacter(f2, f2.zero()), 5);
  REQUIRE(rep.rows.size() == 6);
  for (unsigned n = 0; n <= 5; ++n) {
    CHECK(rep.rows[n].divisors == Integer(1u << n));
    CHECK(rep.rows[n].zeta_coefficient == CyclotomicInt(2, Integer(1u << n)));
  }
  auto id = kapranov_check(catalog::affine_line_id(), AdditiveCharacter(f2, f2.one()), 5);
  for (unsigned n = 1; n <= 5; ++n) CHECK(id.rows[n].zeta_coefficient.is_zero());

  FiniteField f3 = build_field(3, 1);
  for (const auto& spec : {catalog::circle_xy(), catalog::gm_id(), catalog::torus_sum()})
    CHECK_NOTHROW(kapranov_check(spec, AdditiveCharacter(f3, f3.one()), 4));
}

TEST_CASE("rational reconstruction") {
  FiniteField f5 = build_field(5, 1);
  auto c = rational_reconstruct(hw_zeta(catalog::affine_space(1), f5, 12), 2);
  CHECK(c.P == std::vector<Rational>{1});
  CHECK(c.Q == std::vector<Rational>{1, -5});

  auto p1 = rational_reconstruct(hw_zeta(catalog::projective_space(1), f5, 12), 3);
  CHECK(p1.P == std::vector<Rational>{1});
  CHECK(p1.Q == std::vector<Rational>{1, -6, 5});

  Series<Integer> poly(std::vector<Integer>{1, -1, 0, 0, 0, 0, 0});
  auto pc = rational_reconstruct(poly, 2);
  CHECK(pc.P == std::vector<Rational>{1, -1});
  CHECK(pc.Q == std::vector<Rational>{1});

  CHECK_THROWS_WITH_AS(rational_reconstruct(poly, 3), doctest::Contains("InsufficientOrder"), Error);
  Series<Integer> wild(std::vector<Integer>{1, 1, 5, 2, 17, -3});
  CHECK_THROWS_WITH_AS(rational_reconstruct(wild, 1), doctest::Contains("NoCandidate"), Error);

  // Round trip on random candidates.
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 3);
  for (int trial = 0; trial < 40; ++trial) {
    RationalCandidate<Rational> rc;
    rc.P = {1};
    rc.Q = {1};
    for (int i = deg(rng); i > 0; --i) rc.P.push_back(coef(rng));
    for (int i = deg(rng); i > 0; --i) rc.Q.push_back(coef(rng));
    const auto s = expand(rc, 12);
    const auto back = rational_reconstruct(s, 3);
    CHECK(back.deg_p() + back.deg_q() <= rc.deg_p() + rc.deg_q());
    CHECK(expand(back, 12) == s);
  }

  // Over Q(zeta_3): 1 + g t and 1 / (1 - zeta t).
  FiniteField f3 = build_field(3, 1);
  auto g = rational_reconstruct(exp_zeta(catalog::affine_line_square(), AdditiveCharacter(f3, f3.one()), 8), 3);
  CHECK(g.deg_p() == 1);
  CHECK(g.deg_q() == 0);
  const CyclotomicInt z = CyclotomicInt::root_of_unity(3, 1);
  auto geo = euler_factor(z, 1, Integer(1), 8);
  auto gc = rational_reconstruct(geo, 3);
  REQUIRE(gc.Q.size() == 2);
  CHECK(gc.Q[1] == CycRational(-z));
}

TEST_CASE("cyclotomic rationals") {
  const CycRational a(CyclotomicInt::from_powers(5, std::vector<Integer>{1, 2, 0, 3}), Integer(4));
  const CycRational one(CyclotomicInt(5, Integer(1)));
  CHECK(a * a.inverse() == one);
  CHECK((a - a).is_zero());
  CHECK(CycRational(CyclotomicInt(3, Integer(6)), Integer(4)) == CycRational(CyclotomicInt(3, Integer(3)), Integer(2)));
}
