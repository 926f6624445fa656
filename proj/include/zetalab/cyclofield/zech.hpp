#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "zetalab/cyclofield/finite_field.hpp"

namespace zetalab {

/// Table-driven F_{p^K} for enumeration kernels. Elements are codes:
/// 0 is zero and c >= 1 stands for g^{c-1}, g the smallest primitive element
/// of the FiniteField representation. Addition goes through Zech logarithms.
class ZechField {
 public:
  using Code = std::uint32_t;

  /// Largest table-backed field, as log2 of its size.
  static constexpr unsigned kMaxBits = 26;

  /// Cached instance for F_{p^K}; throws BudgetExceeded above kMaxBits.
  static std::shared_ptr<const ZechField> get(u64 p, unsigned K);
  /// Drops cached tables (tests and long runs).
  static void clear_cache();

  explicit ZechField(FiniteField field);

  const FiniteField& field() const { return field_; }
  u64 p() const { return p_; }
  u64 size() const { return q_; }
  unsigned degree() const { return field_.k(); }

  static constexpr Code zero() { return 0; }
  static constexpr Code one() { return 1; }

  Code mul(Code a, Code b) const {
    if (a == 0 || b == 0) return 0;
    u64 s = static_cast<u64>(a - 1) + (b - 1);
    if (s >= order_) s -= order_;
    return static_cast<Code>(s + 1);
  }
  Code add(Code a, Code b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    u64 d = b >= a ? b - a : b + order_ - a;
    Code z = zech_[d];
    if (z == 0) return 0;
    u64 s = static_cast<u64>(a - 1) + (z - 1);
    if (s >= order_) s -= order_;
    return static_cast<Code>(s + 1);
  }
  Code neg(Code a) const { return mul(a, minus_one_); }
  Code sub(Code a, Code b) const { return add(a, neg(b)); }
  Code inv(Code a) const { return a <= 1 ? a : static_cast<Code>(order_ - (a - 1) + 1); }
  Code pow(Code a, u64 e) const;
  /// Absolute trace to F_p.
  unsigned trace(Code a) const { return a == 0 ? 0u : trace_[a - 1]; }
  /// Whether a lies in the subfield F_{p^d} (d must divide the degree).
  bool in_subfield(Code a, unsigned d) const;
  /// Square roots of a; returns how many were written to `out`.
  int sqrt(Code a, Code out[2]) const;

  Code from_int(std::int64_t v) const;
  Code from_elem(const FFElem& e) const;
  FFElem to_elem(Code a) const { return field_.from_index(index(a)); }
  /// Base-p packed coefficient index (the FiniteField lexicographic rank).
  u64 index(Code a) const { return a == 0 ? 0 : antilog_[a - 1]; }

 private:
  FiniteField field_;
  u64 p_, q_, order_;
  Code minus_one_;
  std::vector<std::uint32_t> zech_;
  std::vector<std::uint8_t> trace_;
  std::vector<std::uint32_t> antilog_;
  std::vector<std::uint32_t> log_;
};

}  // namespace zetalab
