#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "zetalab/error.hpp"
#include "zetalab/witt/witt.hpp"
#include "zetalab/zetas/zeta.hpp"

using namespace zetalab;

namespace {

Series<Integer> geometric(long a, unsigned T) { return euler_factor(Integer(a), 1, Integer(1), T); }

Series<Rational> rational_series(const Series<Integer>& s) { return to_rational(s); }

/// det(1 - tM) by the Leibniz expansion over polynomial entries.
std::vector<Rational> leibniz_char_poly(const RationalMatrix& M) {
  const auto n = static_cast<std::size_t>(M.rows());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Rational> total(n + 1, Rational(0));
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    std::vector<Rational> term{Rational(sign)};
    for (std::size_t i = 0; i < n; ++i) {
      // entry (i, perm[i]) of 1 - tM: constant [i == perm i], linear -M.
      const Rational c0 = i == perm[i] ? 1 : 0;
      const Rational c1 = -M(i, perm[i]);
      std::vector<Rational> next(term.size() + 1, Rational(0));
      for (std::size_t k = 0; k < term.size(); ++k) {
        next[k] += term[k] * c0;
        next[k + 1] += term[k] * c1;
      }
      term = std::move(next);
    }
    for (std::size_t k = 0; k <= n; ++k) total[k] += term[k];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

RationalMatrix random_matrix(std::mt19937& rng, int max_size, int bound) {
  std::uniform_int_distribution<int> size(1, max_size), entry(-bound, bound);
  const int n = size(rng);
  RationalMatrix M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = entry(rng);
  return M;
}

Series<Rational> random_witt(std::mt19937& rng, unsigned T) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  std::vector<Rational> c{Rational(1)};
  for (unsigned i = 1; i <= T; ++i) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    c.push_back(r);
  }
  return Series<Rational>(std::move(c));
}

}  // namespace

TEST_CASE("witt addition and ghosts") {
  const unsigned T = 8;
  auto u = geometric(3, T);
  CHECK(witt_add(u, Series<Integer>::one(Integer(1), T)) == u);
  CHECK(witt_add(geometric(2, T), geometric(5, T)) == geometric(2, T) * geometric(5, T));
  CHECK_THROWS_WITH_AS(witt_add(u, geometric(2, T + 1)), doctest::Contains("OrderMismatch"), Error);

  auto g = ghost(geometric(-3, T));
  for (unsigned m = 1; m <= T; ++m) {
    Integer want;
    mpz_pow_ui(want.get_mpz_t(), Integer(-3).get_mpz_t(), m);
    CHECK(g[m - 1] == want);
  }
  for (const auto& v : ghost(Series<Integer>::one(Integer(1), T))) CHECK(v == 0);

  auto p1 = hw_zeta(catalog::projective_space(1), build_field(5, 1), 10);
  CHECK(ghost_inverse(ghost(p1)) == p1);
  CHECK(witt_sub(witt_add(p1, geometric(3, 10)), geometric(3, 10)) == p1);
}

TEST_CASE("witt multiplication") {
  const unsigned T = 8;
  CHECK(witt_mul(geometric(2, T), geometric(-3, T)) == geometric(-6, T));
  auto p1 = hw_zeta(catalog::projective_space(1), build_field(3, 1), T);
  CHECK(witt_mul(p1, geometric(1, T)) == p1);

  FiniteField f3 = build_field(3, 1);
  CHECK(witt_mul(hw_zeta(catalog::affine_space(1), f3, T), hw_zeta(catalog::affine_space(1), f3, T)) ==
        hw_zeta(catalog::affine_space(2), f3, T));

  // Ghosts of 1 + t are (1, -1, 1, ...); the square stays integral.
  Series<Integer> one_plus_t(std::vector<Integer>{1, 1, 0, 0, 0});
  CHECK_NOTHROW(witt_mul(one_plus_t, one_plus_t));

  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_witt(rng, 6), b = random_witt(rng, 6), c = random_witt(rng, 6);
    CHECK(witt_mul(a, b) == witt_mul(b, a));
    CHECK(witt_mul(witt_mul(a, b), c) == witt_mul(a, witt_mul(b, c)));
    CHECK(witt_mul(a, witt_add(b, c)) == witt_add(witt_mul(a, b), witt_mul(a, c)));
    CHECK(witt_add(a, b) == witt_add(b, a));
    CHECK(witt_mul(a, rational_series(geometric(1, 6))) == a);
  }

  // Over Z[zeta_3]: (1 - zeta t)^{-1} * (1 - zeta t)^{-1} = (1 - zeta^2 t)^{-1}.
  const auto z = CyclotomicInt::root_of_unity(3, 1);
  CHECK(witt_mul(euler_factor(z, 1, Integer(1), 6), euler_factor(z, 1, Integer(1), 6)) ==
        euler_factor(z * z, 1, Integer(1), 6));
}

TEST_CASE("L map") {
  RationalMatrix zero = RationalMatrix::Zero(1, 1);
  CHECK(L_map(zero, 6) == Series<Rational>::one(Rational(1), 6));

  RationalMatrix d = RationalMatrix::Zero(2, 2);
  d(0, 0) = 2;
  d(1, 1) = -5;
  CHECK(L_map(d, 8) == rational_series(geometric(2, 8) * geometric(-5, 8)));

  auto fib = L_map(companion({Rational(1), Rational(-1), Rational(-1)}), 12);
  Integer a = 1, b = 1;
  CHECK(fib[0] == 1);
  for (unsigned n = 1; n <= 12; ++n) {
    CHECK(fib[n] == Rational(b));
    const Integer c = a + b;
    a = b;
    b = c;
  }

  IntegerMatrix im(2, 2);
  im << 1, 1, 1, 0;
  CHECK(L_map(im, 5) == Series<Integer>(std::vector<Integer>{1, 1, 2, 3, 5, 8}));

  CHECK_THROWS_WITH_AS(L_map(RationalMatrix(RationalMatrix::Zero(2, 3)), 4), doctest::Contains("NonSquare"), Error);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const RationalMatrix M = random_matrix(rng, 4, 3);
    CHECK(reciprocal_char_poly(M) == leibniz_char_poly(M));
  }
}

TEST_CASE("trace identity") {
  CHECK(trace_identity_check(RationalMatrix::Zero(2, 2), 6).trace_side == Series<Rational>::one(Rational(1), 6));
  auto id = trace_identity_check(RationalMatrix::Identity(2, 2), 6);
  for (unsigned n = 0; n <= 6; ++n) CHECK(id.trace_side[n] == n + 1);

  std::mt19937 rng(20);
  for (int trial = 0; trial < 20; ++trial) {
    const RationalMatrix M = random_matrix(rng, 4, 3);
    CHECK_NOTHROW(trace_identity_check(M, 10));
  }
}

TEST_CASE("L is a ring map on matrices") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalMatrix A = random_matrix(rng, 3, 2), B = random_matrix(rng, 3, 2);
    CHECK(L_map(direct_sum(A, B), 8) == witt_add(L_map(A, 8), L_map(B, 8)));
    CHECK(L_map(kronecker(A, B), 8) == witt_mul(L_map(A, 8), L_map(B, 8)));
  }
}

TEST_CASE("zeta lift") {
  FiniteField f5 = build_field(5, 1);
  auto a1 = zeta_lift(rational_reconstruct(hw_zeta(catalog::affine_space(1), f5, 12), 3));
  CHECK(a1.rank_plus() == 1);
  CHECK(a1.plus(0, 0) == 5);
  CHECK(a1.rank_minus() == 0);

  RationalCandidate<Rational> line{{Rational(1), Rational(-1)}, {Rational(1)}, 6};
  auto l = zeta_lift(line);
  CHECK(l.rank_plus() == 0);
  CHECK(l.rank_minus() == 1);
  CHECK(l.minus(0, 0) == 1);

  const auto p1 = hw_zeta(catalog::projective_space(1), f5, 12);
  auto e = zeta_lift(rational_reconstruct(p1, 4));
  CHECK(e.rank_plus() == 2);
  CHECK(reciprocal_char_poly(e.plus) == std::vector<Rational>{1, -6, 5});
  CHECK(e.value(12) == rational_series(p1));

  CHECK(endo_class_from_json(to_json(e)).value(12) == e.value(12));
  RationalCandidate<Rational> unchecked{{Rational(1)}, {Rational(1), Rational(-2)}, 0};
  CHECK_THROWS_WITH_AS(zeta_lift(unchecked), doctest::Contains("UnverifiedCandidate"), Error);
}

TEST_CASE("exponentiability") {
  FiniteField f3 = build_field(3, 1);
  auto r = exponentiability_check(catalog::affine_space(1), catalog::affine_space(1), f3, 6);
  CHECK(r.zeta_product == geometric(9, 6));
  auto pt = exponentiability_check(catalog::point(), catalog::gm(), f3, 6);
  CHECK(pt.zeta_x == geometric(1, 6));
  CHECK(pt.witt_product == pt.zeta_y);

  // G_m x G_m: N_m = (3^m - 1)^2 counted directly.
  auto gg = exponentiability_check(catalog::gm(), catalog::gm(), f3, 6);
  std::vector<Integer> N;
  for (unsigned m = 1; m <= 6; ++m) {
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), 3, m);
    N.push_back((q - 1) * (q - 1));
  }
  CHECK(gg.zeta_product == exp_power_sums(N, 6));

  const VarietySpec conic = VarietySpec::projective(2).equation("x0*x2 - x1^2");
  CHECK_NOTHROW(exponentiability_check(conic, catalog::gm(), build_field(2, 1), 6));
}
