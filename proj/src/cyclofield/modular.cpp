#include "zetalab/cyclofield/modular.hpp"

#include <algorithm>
#include <stdexcept>

namespace zetalab {

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit inputs.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

int moebius(u64 n) {
  int sign = 1;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

FpPoly::FpPoly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= p_;
  trim();
}

FpPoly FpPoly::monomial(u64 p, u64 coeff, unsigned degree) {
  std::vector<u64> c(degree + 1, 0);
  c[degree] = coeff % p;
  return FpPoly(p, std::move(c));
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::monic() const {
  if (c_.empty()) return *this;
  u64 inv = invmod(c_.back(), p_);
  std::vector<u64> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = mulmod(c_[i], inv, p_);
  return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::derivative() const {
  if (c_.size() <= 1) return FpPoly(p_, {});
  std::vector<u64> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = mulmod(c_[i], i % p_, p_);
  return FpPoly(p_, std::move(out));
}

u64 FpPoly::eval(u64 x) const {
  u64 acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = addmod(mulmod(acc, x, p_), *it, p_);
  return acc;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  std::vector<u64> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = addmod(a[i], b[i], a.p_);
  return FpPoly(a.p_, std::move(out));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  std::vector<u64> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = submod(a[i], b[i], a.p_);
  return FpPoly(a.p_, std::move(out));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly(a.p_, {});
  std::vector<u64> out(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      out[i + j] = addmod(out[i + j], mulmod(a.c_[i], b.c_[j], a.p_), a.p_);
  }
  return FpPoly(a.p_, std::move(out));
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) throw std::domain_error("FpPoly division by zero");
  const u64 p = a.prime();
  std::vector<u64> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {FpPoly(p, {}), a};
  std::vector<u64> quot(a.degree() - db + 1, 0);
  const u64 inv = invmod(b.leading(), p);
  for (int i = a.degree(); i >= db; --i) {
    u64 c = mulmod(rem[i], inv, p);
    if (c == 0) continue;
    quot[i - db] = c;
    for (int j = 0; j <= db; ++j) rem[i - db + j] = submod(rem[i - db + j], mulmod(c, b[j], p), p);
  }
  return {FpPoly(p, std::move(quot)), FpPoly(p, std::move(rem))};
}

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m) { return (a * b) % m; }

FpPoly powmod(FpPoly base, u64 exp, const FpPoly& m) {
  FpPoly r = FpPoly::constant(m.prime(), 1) % m;
  base = base % m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

namespace {

FpPoly pth_root(const FpPoly& f) {
  // f' == 0 means f(x) = g(x^p); over F_p the coefficients are their own p-th roots.
  const u64 p = f.prime();
  std::vector<u64> out(f.degree() / p + 1, 0);
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) out[i / p] = f[i];
  return FpPoly(p, std::move(out));
}

}  // namespace

FpPoly radical(const FpPoly& f_in) {
  FpPoly f = f_in.monic();
  if (f.degree() <= 0) return FpPoly::constant(f_in.prime(), 1);
  FpPoly df = f.derivative();
  if (df.is_zero()) return radical(pth_root(f));
  FpPoly g = gcd(f, df);
  if (g.degree() == 0) return f;
  FpPoly w = f / g;
  FpPoly rg = radical(g);
  FpPoly common = gcd(w, rg);
  return ((w * rg) / common).monic();
}

std::vector<std::pair<unsigned, FpPoly>> distinct_degree_factors(const FpPoly& squarefree) {
  std::vector<std::pair<unsigned, FpPoly>> out;
  const u64 p = squarefree.prime();
  FpPoly f = squarefree.monic();
  FpPoly h = FpPoly::x(p) % f;
  const FpPoly x = FpPoly::x(p);
  unsigned d = 0;
  while (f.degree() >= 2 * static_cast<int>(d + 1)) {
    ++d;
    h = powmod(h, p, f);
    FpPoly g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(d, g);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(static_cast<unsigned>(f.degree()), f);
  return out;
}

bool is_irreducible(const FpPoly& f_in) {
  const FpPoly f = f_in.monic();
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const u64 p = f.prime();
  const FpPoly x = FpPoly::x(p);
  // x^{p^i} mod f for i = 0..n
  std::vector<FpPoly> frob{x % f};
  for (int i = 1; i <= n; ++i) frob.push_back(powmod(frob.back(), p, f));
  if (!((frob[n] - x) % f).is_zero()) return false;
  for (u64 l : prime_factors(static_cast<u64>(n))) {
    FpPoly g = gcd(f, frob[n / l] - x);
    if (g.degree() > 0) return false;
  }
  return true;
}

}  // namespace zetalab
