#pragma once

#include "zetalab/cyclofield/cyclotomic.hpp"
#include "zetalab/cyclofield/finite_field.hpp"

namespace zetalab {

/// chi_c(x) = zeta_p^{Tr_{F_q/F_p}(c x)}. Nontrivial iff c != 0.
class AdditiveCharacter {
 public:
  AdditiveCharacter(FiniteField field, FFElem twist);
  /// Twist given by its coefficient vector in the field's basis.
  AdditiveCharacter(FiniteField field, std::vector<u64> twist_coeffs)
      : AdditiveCharacter(field, field.from_coeffs(std::move(twist_coeffs))) {}

  const FiniteField& field() const { return field_; }
  const FFElem& twist() const { return twist_; }
  bool trivial() const { return twist_.is_zero(); }

  /// Exponent e in [0, p) with chi(x) = zeta^e.
  u64 exponent(const FFElem& x) const;
  CyclotomicInt operator()(const FFElem& x) const;

 private:
  FiniteField field_;
  FFElem twist_;
};

inline CyclotomicInt char_eval(const AdditiveCharacter& chi, const FFElem& x) { return chi(x); }

}  // namespace zetalab
