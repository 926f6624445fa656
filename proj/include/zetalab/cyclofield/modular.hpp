#pragma once

// Word-size modular arithmetic and dense polynomials over a prime field F_p.

#include <cstdint>
#include <utility>
#include <vector>

namespace zetalab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  if (s >= m || s < a) s -= m;
  return s;
}
inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }
u64 powmod(u64 base, u64 exp, u64 m);
/// Inverse modulo a prime.
u64 invmod(u64 a, u64 p);

bool is_prime(u64 n);
/// Distinct prime factors, ascending.
std::vector<u64> prime_factors(u64 n);
/// Möbius function.
int moebius(u64 n);
std::vector<unsigned> divisors(unsigned n);

/// Dense polynomial over F_p, coefficients low to high, no trailing zeros
/// (the zero polynomial is the empty vector).
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(u64 p, std::vector<u64> coeffs);
  static FpPoly monomial(u64 p, u64 coeff, unsigned degree);
  static FpPoly x(u64 p) { return monomial(p, 1, 1); }
  static FpPoly constant(u64 p, u64 c) { return monomial(p, c, 0); }

  u64 prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<u64>& coeffs() const { return c_; }
  u64 operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  u64 leading() const { return c_.empty() ? 0 : c_.back(); }

  FpPoly monic() const;
  FpPoly derivative() const;
  u64 eval(u64 x) const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

 private:
  void trim();
  u64 p_ = 2;
  std::vector<u64> c_;
};

/// Quotient and remainder; `b` must be nonzero.
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
inline FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
inline FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }
/// Monic gcd (zero if both are zero).
FpPoly gcd(FpPoly a, FpPoly b);
FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m);
FpPoly powmod(FpPoly base, u64 exp, const FpPoly& m);
/// Product of the distinct monic irreducible factors.
FpPoly radical(const FpPoly& f);
/// Distinct-degree factorisation of a squarefree polynomial: pairs
/// (d, product of all irreducible factors of degree d).
std::vector<std::pair<unsigned, FpPoly>> distinct_degree_factors(const FpPoly& squarefree);
/// Rabin's test.
bool is_irreducible(const FpPoly& f);

}  // namespace zetalab
