#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace zetalab {

using Exponents = std::vector<unsigned>;

/// Sparse multivariate polynomial in x0..x{n-1} with int64 coefficients.
/// Arithmetic throws on coefficient overflow.
class Polynomial {
 public:
  explicit Polynomial(unsigned nvars = 0) : nvars_(nvars) {}
  static Polynomial constant(unsigned nvars, std::int64_t c);
  static Polynomial variable(unsigned nvars, unsigned i);

  unsigned nvars() const { return nvars_; }
  const std::map<Exponents, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::int64_t constant_term() const;
  int total_degree() const;
  int degree_in(unsigned var) const;
  bool is_homogeneous() const;
  /// Variables with a positive exponent somewhere.
  std::vector<unsigned> variables() const;

  void add_term(const Exponents& e, std::int64_t c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  Polynomial pow(unsigned e) const;

  /// Same polynomial in a ring with `nvars` variables, x_i renamed to x_{i+offset}.
  Polynomial embed(unsigned nvars, unsigned offset = 0) const;
  /// Replaces x_var by `value` (a polynomial in the same ring).
  Polynomial substitute(unsigned var, const Polynomial& value) const;
  /// Evaluation at integer coordinates (exact, throws on overflow).
  std::int64_t eval(const std::vector<std::int64_t>& x) const;

  /// Canonical text: graded-lex descending terms, e.g. "x0^2*x1 - 3*x1 + 1".
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  unsigned nvars_;
  std::map<Exponents, std::int64_t> terms_;
};

/// Parses "x0^2 + 3*x1*(x0 - 1)" style input. Variables are x0..x{nvars-1};
/// errors are ParseError with the byte offset in the message.
Polynomial parse_polynomial(std::string_view text, unsigned nvars);

}  // namespace zetalab
