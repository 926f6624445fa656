#pragma once

#include <json.hpp>

#include "zetalab/cyclofield/cyclotomic.hpp"
#include "zetalab/numeric.hpp"
#include "zetalab/zetas/series.hpp"

namespace zetalab {

/// Integers that fit in 64 bits become JSON numbers, others decimal strings.
nlohmann::json integer_json(const Integer& v);
/// Integers as above; proper fractions as "a/b" strings.
nlohmann::json rational_json(const Rational& v);
Integer integer_from_json(const nlohmann::json& v);
Rational rational_from_json(const nlohmann::json& v);

/// Coefficient vector in the basis zeta^0 .. zeta^{p-2}.
nlohmann::json cyclotomic_json(const CyclotomicInt& v);

inline nlohmann::json value_json(const Integer& v) { return integer_json(v); }
inline nlohmann::json value_json(const Rational& v) { return rational_json(v); }
inline nlohmann::json value_json(const CyclotomicInt& v) { return cyclotomic_json(v); }

template <class R>
nlohmann::json series_json(const Series<R>& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : s.coeffs()) out.push_back(value_json(c));
  return out;
}

}  // namespace zetalab
