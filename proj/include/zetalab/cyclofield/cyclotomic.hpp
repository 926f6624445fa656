#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "zetalab/numeric.hpp"

namespace zetalab {

/// Exact element of Z[zeta_p], stored in the basis zeta^0 .. zeta^{p-2}.
/// For p = 2 this is Z (zeta = -1).
class CyclotomicInt {
 public:
  CyclotomicInt() = default;
  explicit CyclotomicInt(std::uint64_t p);
  CyclotomicInt(std::uint64_t p, const Integer& n);
  /// Canonical reduction of an arbitrary vector in the basis zeta^0 .. zeta^{len-1}
  /// (exponents taken mod p).
  static CyclotomicInt from_powers(std::uint64_t p, std::span<const Integer> coeffs);
  /// zeta^e.
  static CyclotomicInt root_of_unity(std::uint64_t p, std::int64_t e);
  /// sum_e counts[e] * zeta^e for a histogram over Z/p.
  static CyclotomicInt from_histogram(std::uint64_t p, std::span<const Integer> counts);

  std::uint64_t order() const { return p_; }
  const std::vector<Integer>& coeffs() const { return c_; }
  bool is_zero() const;
  /// True when the value lies in Z (all higher coefficients vanish).
  bool is_rational_integer() const;

  CyclotomicInt& operator+=(const CyclotomicInt& o);
  CyclotomicInt& operator-=(const CyclotomicInt& o);
  CyclotomicInt& operator*=(const CyclotomicInt& o);
  CyclotomicInt& operator*=(const Integer& n);
  friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
  friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }
  friend CyclotomicInt operator*(CyclotomicInt a, const CyclotomicInt& b) { return a *= b; }
  friend CyclotomicInt operator*(CyclotomicInt a, const Integer& n) { return a *= n; }
  friend CyclotomicInt operator*(const Integer& n, CyclotomicInt a) { return a *= n; }
  CyclotomicInt operator-() const;

  /// Exact division by a rational integer; false if some coefficient is not divisible.
  bool divide_exact(const Integer& n, CyclotomicInt& out) const;
  /// Galois action zeta -> zeta^a (a coprime to p).
  CyclotomicInt galois(std::int64_t a) const;
  CyclotomicInt pow(unsigned e) const;

  friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }
  friend std::ostream& operator<<(std::ostream& os, const CyclotomicInt& v);

 private:
  void check_order(const CyclotomicInt& o) const;
  std::uint64_t p_ = 2;
  std::vector<Integer> c_{Integer(0)};
};

/// Ring helpers used by the templated series code.
inline CyclotomicInt zero_like(const CyclotomicInt& v) { return CyclotomicInt(v.order()); }
inline CyclotomicInt one_like(const CyclotomicInt& v) { return CyclotomicInt(v.order(), Integer(1)); }
inline bool divide_exact(const CyclotomicInt& v, const Integer& n, CyclotomicInt& out) {
  return v.divide_exact(n, out);
}

inline Integer zero_like(const Integer&) { return Integer(0); }
inline Integer one_like(const Integer&) { return Integer(1); }

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool divide_exact(const Rational& v, const Integer& n, Rational& out) {
  out = v / Rational(n);
  return true;
}

}  // namespace zetalab
