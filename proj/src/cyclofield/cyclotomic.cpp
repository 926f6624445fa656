#include "zetalab/cyclofield/cyclotomic.hpp"

#include "zetalab/error.hpp"

namespace zetalab {

CyclotomicInt::CyclotomicInt(std::uint64_t p) : p_(p), c_(p - 1, Integer(0)) {}

CyclotomicInt::CyclotomicInt(std::uint64_t p, const Integer& n) : CyclotomicInt(p) { c_[0] = n; }

CyclotomicInt CyclotomicInt::from_powers(std::uint64_t p, std::span<const Integer> coeffs) {
  std::vector<Integer> full(p, Integer(0));
  for (std::size_t i = 0; i < coeffs.size(); ++i) full[i % p] += coeffs[i];
  // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
  CyclotomicInt out(p);
  for (std::uint64_t i = 0; i + 1 < p; ++i) out.c_[i] = full[i] - full[p - 1];
  return out;
}

CyclotomicInt CyclotomicInt::root_of_unity(std::uint64_t p, std::int64_t e) {
  const auto pp = static_cast<std::int64_t>(p);
  std::int64_t r = e % pp;
  if (r < 0) r += pp;
  std::vector<Integer> v(p, Integer(0));
  v[static_cast<std::size_t>(r)] = 1;
  return from_powers(p, v);
}

CyclotomicInt CyclotomicInt::from_histogram(std::uint64_t p, std::span<const Integer> counts) {
  return from_powers(p, counts);
}

bool CyclotomicInt::is_zero() const {
  for (const auto& v : c_)
    if (v != 0) return false;
  return true;
}

bool CyclotomicInt::is_rational_integer() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

void CyclotomicInt::check_order(const CyclotomicInt& o) const {
  if (p_ != o.p_)
    throw Error(Errc::MixedCyclotomicOrder,
                "Z[zeta_" + std::to_string(p_) + "] vs Z[zeta_" + std::to_string(o.p_) + "]");
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
  check_order(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CyclotomicInt& CyclotomicInt::operator-=(const CyclotomicInt& o) {
  check_order(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CyclotomicInt& CyclotomicInt::operator*=(const CyclotomicInt& o) {
  check_order(o);
  std::vector<Integer> full(p_, Integer(0));
  const std::size_t n = c_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (o.c_[j] == 0) continue;
      full[(i + j) % p_] += c_[i] * o.c_[j];
    }
  }
  *this = from_powers(p_, full);
  return *this;
}

CyclotomicInt& CyclotomicInt::operator*=(const Integer& n) {
  for (auto& v : c_) v *= n;
  return *this;
}

CyclotomicInt CyclotomicInt::operator-() const {
  CyclotomicInt r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

bool CyclotomicInt::divide_exact(const Integer& n, CyclotomicInt& out) const {
  CyclotomicInt r(p_);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!zetalab::divide_exact(c_[i], n, r.c_[i])) return false;
  out = std::move(r);
  return true;
}

CyclotomicInt CyclotomicInt::galois(std::int64_t a) const {
  std::vector<Integer> full(p_, Integer(0));
  const auto pp = static_cast<std::int64_t>(p_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    std::int64_t e = (static_cast<std::int64_t>(i) * a) % pp;
    if (e < 0) e += pp;
    full[static_cast<std::size_t>(e)] += c_[i];
  }
  return from_powers(p_, full);
}

CyclotomicInt CyclotomicInt::pow(unsigned e) const {
  CyclotomicInt r(p_, Integer(1));
  CyclotomicInt b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::ostream& operator<<(std::ostream& os, const CyclotomicInt& v) {
  os << "[";
  for (std::size_t i = 0; i < v.c_.size(); ++i) os << (i ? "," : "") << v.c_[i];
  return os << "]";
}

}  // namespace zetalab
