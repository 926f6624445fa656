#include "zetalab/json_util.hpp"

#include "zetalab/error.hpp"

namespace zetalab {

nlohmann::json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

nlohmann::json rational_json(const Rational& v) {
  if (v.get_den() == 1) return integer_json(v.get_num());
  return v.get_str();
}

Integer integer_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) return Integer(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string()) {
    Integer r;
    if (r.set_str(v.get<std::string>(), 10) == 0) return r;
  }
  throw Error(Errc::ParseError, "expected an integer, got " + v.dump());
}

Rational rational_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(integer_from_json(v));
  if (v.is_string()) {
    Rational r;
    if (r.set_str(v.get<std::string>(), 10) == 0 && r.get_den() != 0) {
      r.canonicalize();
      return r;
    }
  }
  throw Error(Errc::ParseError, "expected a rational, got " + v.dump());
}

nlohmann::json cyclotomic_json(const CyclotomicInt& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : v.coeffs()) out.push_back(integer_json(c));
  return out;
}

}  // namespace zetalab
