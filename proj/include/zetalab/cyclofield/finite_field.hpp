#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <vector>

#include "zetalab/cyclofield/modular.hpp"

namespace zetalab {

class FFElem;

/// F_{p^k} = F_p[x]/(modulus), with modulus the lexicographically smallest
/// monic irreducible of degree k. Immutable; copies share the same state.
class FiniteField {
 public:
  FiniteField() = default;

  u64 p() const { return impl_->p; }
  unsigned k() const { return impl_->k; }
  /// Number of elements p^k.
  u64 size() const { return impl_->q; }
  /// Monic modulus coefficients, low to high (length k + 1).
  const std::vector<u64>& modulus() const { return impl_->modulus; }
  bool valid() const { return impl_ != nullptr; }

  FFElem zero() const;
  FFElem one() const;
  /// Residue class of x.
  FFElem gen() const;
  FFElem from_int(std::int64_t v) const;
  FFElem from_coeffs(std::vector<u64> coeffs) const;
  /// Inverse of FFElem::index(): base-p digits are the coefficients.
  FFElem from_index(u64 index) const;

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.impl_ == b.impl_ || (a.impl_ && b.impl_ && a.impl_->p == b.impl_->p &&
                                  a.impl_->modulus == b.impl_->modulus);
  }

 private:
  struct Impl {
    u64 p;
    unsigned k;
    u64 q;
    std::vector<u64> modulus;
  };
  explicit FiniteField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend FiniteField build_field(u64 p, unsigned k, unsigned max_bits);
  friend class FFElem;
};

/// Default cap on log2 of the field size for user-facing fields.
inline constexpr unsigned kFieldBitsLimit = 24;

/// Builds (and caches) F_{p^k}. Throws NotPrime, DegreeZero, or
/// BudgetExceeded when p^k exceeds 2^max_bits.
FiniteField build_field(u64 p, unsigned k, unsigned max_bits = kFieldBitsLimit);

/// Lexicographically smallest monic irreducible of degree k over F_p,
/// ordering candidates by the base-p integer formed from the lower coefficients.
FpPoly smallest_irreducible(u64 p, unsigned k);

class FFElem {
 public:
  FFElem() = default;
  FFElem(FiniteField field, std::vector<u64> coeffs);

  const FiniteField& field() const { return field_; }
  const std::vector<u64>& coeffs() const { return c_; }
  bool is_zero() const;
  /// Base-p packing of the coefficient vector; also the lexicographic rank.
  u64 index() const;

  FFElem& operator+=(const FFElem& o);
  FFElem& operator-=(const FFElem& o);
  FFElem& operator*=(const FFElem& o);
  friend FFElem operator+(FFElem a, const FFElem& b) { return a += b; }
  friend FFElem operator-(FFElem a, const FFElem& b) { return a -= b; }
  friend FFElem operator*(FFElem a, const FFElem& b) { return a *= b; }
  FFElem operator-() const;

  FFElem pow(u64 e) const;
  /// Multiplicative inverse; the element must be nonzero.
  FFElem inverse() const;
  /// x -> x^p applied `times` times.
  FFElem frobenius(unsigned times = 1) const;

  friend bool operator==(const FFElem& a, const FFElem& b);
  friend std::strong_ordering operator<=>(const FFElem& a, const FFElem& b);
  friend std::ostream& operator<<(std::ostream& os, const FFElem& e);

 private:
  void check_same(const FFElem& o) const;
  FiniteField field_;
  std::vector<u64> c_;
};

/// Deterministic embedding F_q -> F_{q^m}: x maps to the lexicographically
/// smallest root of F_q's modulus inside the big field.
class FieldEmbedding {
 public:
  FieldEmbedding(FiniteField small, FiniteField big);

  const FiniteField& small() const { return small_; }
  const FiniteField& big() const { return big_; }
  const FFElem& image_of_generator() const { return theta_; }
  FFElem apply(const FFElem& a) const;
  /// Element of the small field mapping to `b`; throws IncompatibleFields if
  /// `b` is not in the image.
  FFElem preimage(const FFElem& b) const;

 private:
  FiniteField small_, big_;
  FFElem theta_;
  std::vector<FFElem> theta_powers_;
};

/// Trace from F_{q^m} (the field of x) down to F_q: sum of x^{q^i}, i < m,
/// returned as an element of `down_to`.
FFElem trace(const FFElem& x, const FiniteField& down_to);

/// Trace to the prime field as an integer in [0, p).
u64 absolute_trace(const FFElem& x);

}  // namespace zetalab
