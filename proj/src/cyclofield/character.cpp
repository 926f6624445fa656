#include "zetalab/cyclofield/character.hpp"

#include "zetalab/error.hpp"

namespace zetalab {

AdditiveCharacter::AdditiveCharacter(FiniteField field, FFElem twist)
    : field_(std::move(field)), twist_(std::move(twist)) {
  if (!(twist_.field() == field_)) throw Error(Errc::FieldMismatch, "twist must lie in the character's field");
}

u64 AdditiveCharacter::exponent(const FFElem& x) const {
  if (!(x.field() == field_)) throw Error(Errc::FieldMismatch, "argument not in the character's field");
  return absolute_trace(twist_ * x);
}

CyclotomicInt AdditiveCharacter::operator()(const FFElem& x) const {
  return CyclotomicInt::root_of_unity(field_.p(), static_cast<std::int64_t>(exponent(x)));
}

}  // namespace zetalab
