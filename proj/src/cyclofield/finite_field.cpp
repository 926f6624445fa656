#include "zetalab/cyclofield/finite_field.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include "zetalab/error.hpp"

namespace zetalab {

namespace {

std::vector<u64> reduce_product(const std::vector<u64>& prod, const std::vector<u64>& modulus, u64 p) {
  const std::size_t k = modulus.size() - 1;
  std::vector<u64> r = prod;
  for (std::size_t i = r.size(); i-- > k;) {
    u64 c = r[i];
    if (c == 0) continue;
    r[i] = 0;
    for (std::size_t j = 0; j < k; ++j)
      r[i - k + j] = submod(r[i - k + j], mulmod(c, modulus[j], p), p);
  }
  r.resize(k, 0);
  return r;
}

/// Row-reduces `rows` (each of length ncols) over F_p; returns pivot columns.
std::vector<std::size_t> row_reduce(std::vector<std::vector<u64>>& rows, std::size_t ncols, u64 p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    u64 inv = invmod(rows[r][c], p);
    for (auto& v : rows[r]) v = mulmod(v, inv, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      u64 f = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j)
        rows[i][j] = submod(rows[i][j], mulmod(f, rows[r][j], p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Basis of the kernel of a square matrix over F_p (columns index unknowns).
std::vector<std::vector<u64>> kernel_basis(std::vector<std::vector<u64>> m, u64 p) {
  const std::size_t n = m.empty() ? 0 : m[0].size();
  auto pivots = row_reduce(m, n, p);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<u64>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<u64> v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = submod(0, m[i][free], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

FpPoly smallest_irreducible(u64 p, unsigned k) {
  if (k == 1) return FpPoly::x(p);
  // Enumerate lower coefficients as base-p counter (c0 fastest).
  std::vector<u64> c(k + 1, 0);
  c[k] = 1;
  while (true) {
    FpPoly f(p, c);
    if (c[0] != 0 && is_irreducible(f)) return f;
    std::size_t i = 0;
    while (i < k && ++c[i] == p) c[i++] = 0;
    if (i == k) break;
  }
  throw Error(Errc::DegreeZero, "no irreducible polynomial found");
}

FiniteField build_field(u64 p, unsigned k, unsigned max_bits) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, "p = " + std::to_string(p));
  if (k == 0) throw Error(Errc::DegreeZero, "extension degree must be >= 1");
  const double bits = k * std::log2(static_cast<double>(p));
  if (bits > max_bits + 1e-9) {
    std::ostringstream os;
    os << "field of size " << p << "^" << k << " exceeds 2^" << max_bits;
    throw Error(Errc::BudgetExceeded, os.str());
  }
  static std::mutex mu;
  static std::map<std::pair<u64, unsigned>, std::shared_ptr<const FiniteField::Impl>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, k);
  if (auto it = cache.find(key); it != cache.end()) return FiniteField(it->second);
  FpPoly mod = smallest_irreducible(p, k);
  std::vector<u64> coeffs = mod.coeffs();
  coeffs.resize(k + 1, 0);
  u64 q = 1;
  for (unsigned i = 0; i < k; ++i) q *= p;
  auto impl = std::make_shared<const FiniteField::Impl>(FiniteField::Impl{p, k, q, std::move(coeffs)});
  cache.emplace(key, impl);
  return FiniteField(impl);
}

FFElem FiniteField::zero() const { return FFElem(*this, std::vector<u64>(k(), 0)); }
FFElem FiniteField::one() const { return from_int(1); }
FFElem FiniteField::gen() const {
  if (k() == 1) return from_int(static_cast<std::int64_t>((p() - modulus()[0]) % p()));
  std::vector<u64> c(k(), 0);
  c[1] = 1;
  return FFElem(*this, std::move(c));
}
FFElem FiniteField::from_int(std::int64_t v) const {
  std::vector<u64> c(k(), 0);
  const auto pp = static_cast<std::int64_t>(p());
  std::int64_t r = v % pp;
  if (r < 0) r += pp;
  c[0] = static_cast<u64>(r);
  return FFElem(*this, std::move(c));
}
FFElem FiniteField::from_coeffs(std::vector<u64> coeffs) const { return FFElem(*this, std::move(coeffs)); }
FFElem FiniteField::from_index(u64 index) const {
  std::vector<u64> c(k(), 0);
  for (unsigned i = 0; i < k(); ++i) {
    c[i] = index % p();
    index /= p();
  }
  return FFElem(*this, std::move(c));
}

FFElem::FFElem(FiniteField field, std::vector<u64> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  const u64 p = field_.p();
  if (c_.size() > field_.k()) {
    std::vector<u64> reduced(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) reduced[i] = c_[i] % p;
    c_ = reduce_product(reduced, field_.modulus(), p);
  } else {
    c_.resize(field_.k(), 0);
    for (auto& v : c_) v %= p;
  }
}

bool FFElem::is_zero() const {
  for (auto v : c_)
    if (v) return false;
  return true;
}

u64 FFElem::index() const {
  u64 idx = 0;
  for (std::size_t i = c_.size(); i-- > 0;) idx = idx * field_.p() + c_[i];
  return idx;
}

void FFElem::check_same(const FFElem& o) const {
  if (!(field_ == o.field_)) throw Error(Errc::FieldMismatch, "operands live in different fields");
}

FFElem& FFElem::operator+=(const FFElem& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = addmod(c_[i], o.c_[i], field_.p());
  return *this;
}

FFElem& FFElem::operator-=(const FFElem& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = submod(c_[i], o.c_[i], field_.p());
  return *this;
}

FFElem& FFElem::operator*=(const FFElem& o) {
  check_same(o);
  const u64 p = field_.p();
  std::vector<u64> prod(2 * c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      prod[i + j] = addmod(prod[i + j], mulmod(c_[i], o.c_[j], p), p);
  }
  c_ = reduce_product(prod, field_.modulus(), p);
  return *this;
}

FFElem FFElem::operator-() const {
  FFElem r = *this;
  for (auto& v : r.c_) v = submod(0, v, field_.p());
  return r;
}

FFElem FFElem::pow(u64 e) const {
  FFElem r = field_.one();
  FFElem b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

FFElem FFElem::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return pow(field_.size() - 2);
}

FFElem FFElem::frobenius(unsigned times) const {
  FFElem r = *this;
  for (unsigned i = 0; i < times; ++i) r = r.pow(field_.p());
  return r;
}

bool operator==(const FFElem& a, const FFElem& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

std::strong_ordering operator<=>(const FFElem& a, const FFElem& b) {
  a.check_same(b);
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    if (a.c_[i] != b.c_[i]) return a.c_[i] <=> b.c_[i];
  }
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const FFElem& e) {
  os << "[";
  for (std::size_t i = 0; i < e.c_.size(); ++i) os << (i ? "," : "") << e.c_[i];
  return os << "]";
}

FieldEmbedding::FieldEmbedding(FiniteField small, FiniteField big) : small_(std::move(small)), big_(std::move(big)) {
  if (small_.p() != big_.p() || big_.k() % small_.k() != 0)
    throw Error(Errc::IncompatibleFields, "F_" + std::to_string(small_.size()) + " does not embed in F_" +
                                              std::to_string(big_.size()));
  const u64 p = big_.p();
  const unsigned kb = big_.k();
  const unsigned ks = small_.k();
  const auto& g = small_.modulus();
  auto eval_modulus = [&](const FFElem& y) {
    FFElem acc = big_.zero();
    for (std::size_t i = g.size(); i-- > 0;) acc = acc * y + big_.from_int(static_cast<std::int64_t>(g[i]));
    return acc;
  };
  if (small_ == big_) {
    theta_ = big_.gen();
  } else if (ks == 1) {
    theta_ = big_.from_int(static_cast<std::int64_t>((p - g[0]) % p));
  } else {
    // Subfield F_q = kernel of (Frob^ks - id) acting on big-field coordinates.
    std::vector<std::vector<u64>> mat(kb, std::vector<u64>(kb, 0));
    for (unsigned j = 0; j < kb; ++j) {
      std::vector<u64> e(kb, 0);
      e[j] = 1;
      FFElem basis(big_, e);
      FFElem img = basis.frobenius(ks) - basis;
      for (unsigned i = 0; i < kb; ++i) mat[i][j] = img.coeffs()[i];
    }
    auto basis = kernel_basis(mat, p);
    std::optional<FFElem> best;
    std::vector<u64> digits(basis.size(), 0);
    while (true) {
      std::vector<u64> v(kb, 0);
      for (std::size_t b = 0; b < basis.size(); ++b)
        for (unsigned i = 0; i < kb; ++i) v[i] = addmod(v[i], mulmod(digits[b], basis[b][i], p), p);
      FFElem y(big_, v);
      if (eval_modulus(y).is_zero() && (!best || y < *best)) best = y;
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
      if (i == digits.size()) break;
    }
    if (!best) throw Error(Errc::IncompatibleFields, "modulus has no root in the extension");
    theta_ = *best;
  }
  theta_powers_.push_back(big_.one());
  for (unsigned i = 1; i < ks; ++i) theta_powers_.push_back(theta_powers_.back() * theta_);
}

FFElem FieldEmbedding::apply(const FFElem& a) const {
  if (!(a.field() == small_)) throw Error(Errc::FieldMismatch, "element not in the embedded field");
  FFElem acc = big_.zero();
  for (unsigned i = 0; i < small_.k(); ++i)
    acc += theta_powers_[i] * big_.from_int(static_cast<std::int64_t>(a.coeffs()[i]));
  return acc;
}

FFElem FieldEmbedding::preimage(const FFElem& b) const {
  if (!(b.field() == big_)) throw Error(Errc::FieldMismatch, "element not in the big field");
  const u64 p = big_.p();
  const unsigned kb = big_.k(), ks = small_.k();
  // Augmented system [theta^0 .. theta^{ks-1} | b].
  std::vector<std::vector<u64>> rows(kb, std::vector<u64>(ks + 1, 0));
  for (unsigned i = 0; i < kb; ++i) {
    for (unsigned j = 0; j < ks; ++j) rows[i][j] = theta_powers_[j].coeffs()[i];
    rows[i][ks] = b.coeffs()[i];
  }
  auto pivots = row_reduce(rows, ks + 1, p);
  std::vector<u64> a(ks, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == ks) throw Error(Errc::IncompatibleFields, "element does not lie in the subfield");
    a[pivots[r]] = rows[r][ks];
  }
  return FFElem(small_, a);
}

FFElem trace(const FFElem& x, const FiniteField& down_to) {
  const FiniteField& big = x.field();
  if (big.p() != down_to.p() || big.k() % down_to.k() != 0)
    throw Error(Errc::IncompatibleFields, "trace target is not a subfield");
  const unsigned m = big.k() / down_to.k();
  FFElem sum = big.zero();
  FFElem term = x;
  for (unsigned i = 0; i < m; ++i) {
    sum += term;
    term = term.frobenius(down_to.k());
  }
  if (down_to.k() == 1) return down_to.from_int(static_cast<std::int64_t>(sum.coeffs()[0]));
  return FieldEmbedding(down_to, big).preimage(sum);
}

u64 absolute_trace(const FFElem& x) {
  FFElem sum = x.field().zero();
  FFElem term = x;
  for (unsigned i = 0; i < x.field().k(); ++i) {
    sum += term;
    term = term.frobenius();
  }
  return sum.coeffs()[0];
}

}  // namespace zetalab
