#pragma once

#include <ostream>

#include "zetalab/cyclofield/cyclotomic.hpp"

namespace zetalab {

/// Element of Q(zeta_p) as num / den, den > 0 and coprime to the content of num.
class CycRational {
 public:
  CycRational() = default;
  explicit CycRational(std::uint64_t p) : num_(p), den_(1) {}
  CycRational(CyclotomicInt num, Integer den = 1);

  std::uint64_t order() const { return num_.order(); }
  const CyclotomicInt& num() const { return num_; }
  const Integer& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integral() const { return den_ == 1; }

  CycRational& operator+=(const CycRational& o);
  CycRational& operator-=(const CycRational& o);
  CycRational& operator*=(const CycRational& o);
  CycRational& operator/=(const CycRational& o);
  friend CycRational operator+(CycRational a, const CycRational& b) { return a += b; }
  friend CycRational operator-(CycRational a, const CycRational& b) { return a -= b; }
  friend CycRational operator*(CycRational a, const CycRational& b) { return a *= b; }
  friend CycRational operator/(CycRational a, const CycRational& b) { return a /= b; }
  friend CycRational operator*(CycRational a, const Integer& n) { return a *= CycRational(CyclotomicInt(a.order(), n)); }
  CycRational operator-() const { return CycRational(-num_, den_); }

  /// Inverse through the norm: 1/a = prod_{sigma != 1} sigma(a) / N(a).
  CycRational inverse() const;

  friend bool operator==(const CycRational& a, const CycRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::ostream& operator<<(std::ostream& os, const CycRational& v);

 private:
  void normalize();
  CyclotomicInt num_{2};
  Integer den_ = 1;
};

inline CycRational zero_like(const CycRational& v) { return CycRational(v.order()); }
inline CycRational one_like(const CycRational& v) { return CycRational(CyclotomicInt(v.order(), Integer(1))); }
inline bool divide_exact(const CycRational& v, const Integer& n, CycRational& out) {
  out = v * CycRational(CyclotomicInt(v.order(), Integer(1)), n);
  return true;
}

}  // namespace zetalab
