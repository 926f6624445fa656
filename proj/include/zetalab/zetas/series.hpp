#pragma once

#include <string>
#include <vector>

#include "zetalab/cyclofield/cyclo_rational.hpp"
#include "zetalab/cyclofield/cyclotomic.hpp"
#include "zetalab/error.hpp"
#include "zetalab/numeric.hpp"

namespace zetalab {

/// Power series c_0 + c_1 t + ... + c_T t^T, truncated at order T.
/// R is Integer, Rational, CyclotomicInt or CycRational.
template <class R>
class Series {
 public:
  Series() = default;
  explicit Series(std::vector<R> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw Error(Errc::InsufficientOrder, "series needs at least the constant term");
  }
  static Series constant(const R& value, unsigned T) {
    std::vector<R> c(T + 1, zero_like(value));
    c[0] = value;
    return Series(std::move(c));
  }
  static Series one(const R& proto, unsigned T) { return constant(one_like(proto), T); }

  unsigned order() const { return static_cast<unsigned>(c_.size()) - 1; }
  const R& operator[](std::size_t i) const { return c_.at(i); }
  R& operator[](std::size_t i) { return c_.at(i); }
  const std::vector<R>& coeffs() const { return c_; }

  Series truncated(unsigned T) const {
    std::vector<R> c(c_.begin(), c_.begin() + std::min<std::size_t>(T + 1, c_.size()));
    return Series(std::move(c));
  }

  Series& operator+=(const Series& o) {
    c_.resize(std::min(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Series& operator-=(const Series& o) {
    c_.resize(std::min(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Series& operator*=(const Series& o) {
    const std::size_t n = std::min(c_.size(), o.c_.size());
    std::vector<R> r(n, zero_like(c_[0]));
    for (std::size_t i = 0; i < n; ++i) {
      if (is_zero_value(c_[i])) continue;
      for (std::size_t j = 0; i + j < n; ++j) r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Series& b) { return a *= b; }
  friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }

  /// First index where the two series differ, or -1.
  friend long first_difference(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.c_.size(), b.c_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (!(a.c_[i] == b.c_[i])) return static_cast<long>(i);
    return a.c_.size() == b.c_.size() ? -1 : static_cast<long>(n);
  }

 private:
  static bool is_zero_value(const Integer& v) { return v == 0; }
  static bool is_zero_value(const Rational& v) { return v == 0; }
  template <class T>
  static bool is_zero_value(const T& v) {
    return v.is_zero();
  }

  std::vector<R> c_;
};

/// exp(sum_{m<=T} N_m t^m / m) via n c_n = sum_{m=1}^n N_m c_{n-m}.
/// Throws NonIntegralCoefficient when some n c_n is not divisible by n.
template <class R>
Series<R> exp_power_sums(const std::vector<R>& N, unsigned T) {
  if (N.size() < T) throw Error(Errc::InsufficientOrder, "need power sums N_1..N_" + std::to_string(T));
  const R proto = N.empty() ? R() : N[0];
  std::vector<R> c(T + 1, zero_like(proto));
  c[0] = one_like(proto);
  for (unsigned n = 1; n <= T; ++n) {
    R acc = zero_like(proto);
    for (unsigned m = 1; m <= n; ++m) acc += N[m - 1] * c[n - m];
    if (!divide_exact(acc, Integer(n), c[n]))
      throw Error(Errc::NonIntegralCoefficient, "coefficient of t^" + std::to_string(n) + " is not integral");
  }
  return Series<R>(std::move(c));
}

/// N_m with t Z'/Z = sum N_m t^m, for Z with constant term 1.
template <class R>
std::vector<R> power_sums(const Series<R>& z) {
  const unsigned T = z.order();
  std::vector<R> N(T, zero_like(z[0]));
  if (!(z[0] == one_like(z[0]))) throw Error(Errc::Mismatch, "series must start with 1");
  // m c_m = sum_{j=1}^{m} N_j c_{m-j}
  for (unsigned m = 1; m <= T; ++m) {
    R acc = z[m] * Integer(m);
    for (unsigned j = 1; j < m; ++j) acc -= N[j - 1] * z[m - j];
    N[m - 1] = acc;
  }
  return N;
}

/// (1 - alpha t^r)^{-a} through t^T; a may be negative.
template <class R>
Series<R> euler_factor(const R& alpha, unsigned r, const Integer& a, unsigned T) {
  Series<R> s = Series<R>::one(alpha, T);
  R power = one_like(alpha);
  Integer binom;
  for (unsigned j = 1; j * r <= T; ++j) {
    power = power * alpha;
    // C(a + j - 1, j)
    const Integer top = a + (j - 1);
    mpz_bin_ui(binom.get_mpz_t(), top.get_mpz_t(), j);
    s[j * r] = power * binom;
  }
  return s;
}

}  // namespace zetalab
