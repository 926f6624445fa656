#include "zetalab/cyclofield/zech.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "zetalab/error.hpp"

namespace zetalab {

namespace {

std::mutex cache_mutex;
std::map<std::pair<u64, unsigned>, std::shared_ptr<const ZechField>> cache;

FFElem smallest_primitive(const FiniteField& F) {
  const u64 order = F.size() - 1;
  const auto factors = prime_factors(order);
  for (u64 idx = 1; idx < F.size(); ++idx) {
    FFElem g = F.from_index(idx);
    bool primitive = true;
    for (u64 l : factors) {
      if (g.pow(order / l) == F.one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  throw Error(Errc::NotPrime, "no primitive element");
}

}  // namespace

std::shared_ptr<const ZechField> ZechField::get(u64 p, unsigned K) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = cache.find({p, K}); it != cache.end()) return it->second;
  }
  FiniteField F = build_field(p, K, kMaxBits);
  auto z = std::make_shared<const ZechField>(F);
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(std::make_pair(p, K), std::move(z)).first->second;
}

void ZechField::clear_cache() {
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.clear();
}

ZechField::ZechField(FiniteField field) : field_(std::move(field)) {
  p_ = field_.p();
  q_ = field_.size();
  order_ = q_ - 1;
  const unsigned K = field_.k();
  const auto& mod = field_.modulus();

  std::vector<u64> tr_basis(K);
  {
    std::vector<u64> e(K, 0);
    for (unsigned i = 0; i < K; ++i) {
      std::fill(e.begin(), e.end(), 0);
      e[i] = 1;
      tr_basis[i] = absolute_trace(field_.from_coeffs(e));
    }
  }

  const FFElem g = smallest_primitive(field_);
  // Fast path when g = a*x + b.
  bool linear = true;
  for (unsigned i = 2; i < K; ++i)
    if (g.coeffs()[i] != 0) linear = false;
  const u64 ga = K >= 2 ? g.coeffs()[1] : 0;
  const u64 gb = g.coeffs()[0];

  antilog_.assign(order_, 0);
  log_.assign(q_, 0);
  trace_.assign(order_, 0);

  std::vector<u64> cur(K, 0), shifted(K, 0);
  cur[0] = 1;
  FFElem cur_elem = field_.one();
  for (u64 n = 0; n < order_; ++n) {
    u64 idx = 0, tr = 0;
    for (unsigned i = K; i-- > 0;) {
      idx = idx * p_ + cur[i];
      tr += cur[i] * tr_basis[i];
    }
    antilog_[n] = static_cast<std::uint32_t>(idx);
    log_[idx] = static_cast<std::uint32_t>(n + 1);
    trace_[n] = static_cast<std::uint8_t>(tr % p_);
    if (linear) {
      const u64 top = cur[K - 1];
      for (unsigned i = K - 1; i > 0; --i) shifted[i] = cur[i - 1];
      shifted[0] = 0;
      if (top)
        for (unsigned i = 0; i < K; ++i) shifted[i] = (shifted[i] + (p_ - top) * mod[i]) % p_;
      for (unsigned i = 0; i < K; ++i) cur[i] = (ga * shifted[i] + gb * cur[i]) % p_;
    } else {
      cur_elem *= g;
      cur = cur_elem.coeffs();
    }
  }

  zech_.assign(order_, 0);
  for (u64 n = 0; n < order_; ++n) {
    const u64 idx = antilog_[n];
    const u64 c0 = idx % p_;
    const u64 shifted_idx = idx - c0 + (c0 + 1) % p_;
    zech_[n] = log_[shifted_idx];
  }
  minus_one_ = from_int(-1);
  if (p_ == 2) minus_one_ = one();
  trace_.shrink_to_fit();
  (void)K;
}

ZechField::Code ZechField::pow(Code a, u64 e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  const u64 l = static_cast<u64>((static_cast<u128>(a - 1) * (e % order_)) % order_);
  return static_cast<Code>(l + 1);
}

bool ZechField::in_subfield(Code a, unsigned d) const {
  if (a == 0) return true;
  u64 sub = 1;
  for (unsigned i = 0; i < d; ++i) sub *= p_;
  const u64 step = order_ / (sub - 1);
  return (a - 1) % step == 0;
}

int ZechField::sqrt(Code a, Code out[2]) const {
  if (a == 0) {
    out[0] = 0;
    return 1;
  }
  const u64 l = a - 1;
  if (p_ == 2) {
    const u64 half = q_ / 2;  // inverse of 2 modulo q - 1
    out[0] = static_cast<Code>(static_cast<u64>((static_cast<u128>(l) * half) % order_) + 1);
    return 1;
  }
  if (l % 2) return 0;
  const u64 r = l / 2;
  out[0] = static_cast<Code>(r + 1);
  out[1] = static_cast<Code>((r + order_ / 2) % order_ + 1);
  return 2;
}

ZechField::Code ZechField::from_int(std::int64_t v) const {
  const auto pp = static_cast<std::int64_t>(p_);
  std::int64_t r = v % pp;
  if (r < 0) r += pp;
  return log_[static_cast<u64>(r)];
}

ZechField::Code ZechField::from_elem(const FFElem& e) const {
  if (!(e.field() == field_)) throw Error(Errc::FieldMismatch, "element not in this field");
  return log_[e.index()];
}

}  // namespace zetalab
