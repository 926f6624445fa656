#include "zetalab/cyclofield/cyclo_rational.hpp"

#include "zetalab/error.hpp"

namespace zetalab {

CycRational::CycRational(CyclotomicInt num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw Error(Errc::NonIntegralCoefficient, "zero denominator");
  normalize();
}

void CycRational::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  Integer g = den_;
  for (const auto& c : num_.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (num_.is_zero()) g = den_;
  if (g != 1) {
    num_.divide_exact(g, num_);
    den_ /= g;
  }
}

CycRational& CycRational::operator+=(const CycRational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

CycRational& CycRational::operator-=(const CycRational& o) { return *this += -o; }

CycRational& CycRational::operator*=(const CycRational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

CycRational& CycRational::operator/=(const CycRational& o) { return *this *= o.inverse(); }

CycRational CycRational::inverse() const {
  if (is_zero()) throw Error(Errc::NonIntegralCoefficient, "division by zero in Q(zeta_p)");
  const auto p = static_cast<std::int64_t>(order());
  CyclotomicInt conj(order(), Integer(1));
  for (std::int64_t a = 2; a < p; ++a) conj *= num_.galois(a);
  const CyclotomicInt norm = num_ * conj;
  // The norm is a rational integer.
  return CycRational(conj * den_, norm.coeffs()[0]);
}

std::ostream& operator<<(std::ostream& os, const CycRational& v) {
  os << v.num_;
  if (v.den_ != 1) os << "/" << v.den_;
  return os;
}

}  // namespace zetalab
