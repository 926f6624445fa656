#include "zetalab/varieties/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "zetalab/error.hpp"

namespace zetalab {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::BudgetExceeded, "polynomial coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::BudgetExceeded, "polynomial coefficient overflow");
  return r;
}

unsigned degree_of(const Exponents& e) {
  unsigned d = 0;
  for (unsigned v : e) d += v;
  return d;
}

class Parser {
 public:
  Parser(std::string_view s, unsigned nvars) : s_(s), n_(nvars) {}

  Polynomial parse() {
    Polynomial r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::ParseError, msg + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::uint64_t number() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a number");
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > (static_cast<std::uint64_t>(INT64_MAX) - 9) / 10) fail("number too large");
      v = v * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0');
    }
    return v;
  }

  Polynomial expr() {
    Polynomial r = term();
    while (true) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }
  Polynomial term() {
    Polynomial r = unary();
    while (eat('*')) r = r * unary();
    return r;
  }
  Polynomial unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Polynomial power() {
    Polynomial base = atom();
    if (eat('^')) {
      std::uint64_t e = number();
      if (e > 256) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }
  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial::constant(n_, static_cast<std::int64_t>(number()));
    if (c == 'x') {
      const std::size_t at = pos_;
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected variable index");
      std::uint64_t i = number();
      if (i >= n_) {
        pos_ = at;
        fail("variable x" + std::to_string(i) + " out of range (" + std::to_string(n_) + " variables)");
      }
      return Polynomial::variable(n_, static_cast<unsigned>(i));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  unsigned n_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::constant(unsigned nvars, std::int64_t c) {
  Polynomial r(nvars);
  r.add_term(Exponents(nvars, 0), c);
  return r;
}

Polynomial Polynomial::variable(unsigned nvars, unsigned i) {
  if (i >= nvars) throw Error(Errc::Usage, "variable index out of range");
  Polynomial r(nvars);
  Exponents e(nvars, 0);
  e[i] = 1;
  r.add_term(e, 1);
  return r;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

std::int64_t Polynomial::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? 0 : it->second;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(degree_of(e)));
  return d;
}

int Polynomial::degree_in(unsigned var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const unsigned d = degree_of(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return degree_of(t.first) == d; });
}

std::vector<unsigned> Polynomial::variables() const {
  std::vector<unsigned> out;
  for (unsigned i = 0; i < nvars_; ++i)
    if (degree_in(i) > 0) out.push_back(i);
  return out;
}

void Polynomial::add_term(const Exponents& e, std::int64_t c) {
  if (e.size() != nvars_) throw Error(Errc::Usage, "exponent vector has wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw Error(Errc::Usage, "polynomials live in different rings");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw Error(Errc::Usage, "polynomials live in different rings");
  Polynomial r(a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (unsigned i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, checked_mul(ca, cb));
    }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, checked_mul(c, -1));
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = constant(nvars_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Polynomial Polynomial::embed(unsigned nvars, unsigned offset) const {
  if (offset + nvars_ > nvars) throw Error(Errc::Usage, "embedding does not fit");
  Polynomial r(nvars);
  for (const auto& [e, c] : terms_) {
    Exponents f(nvars, 0);
    for (unsigned i = 0; i < nvars_; ++i) f[i + offset] = e[i];
    r.add_term(f, c);
  }
  return r;
}

Polynomial Polynomial::substitute(unsigned var, const Polynomial& value) const {
  if (value.nvars_ != nvars_) throw Error(Errc::Usage, "substitution lives in a different ring");
  Polynomial r(nvars_);
  std::vector<Polynomial> powers{constant(nvars_, 1)};
  for (const auto& [e, c] : terms_) {
    while (powers.size() <= e[var]) powers.push_back(powers.back() * value);
    Exponents rest = e;
    rest[var] = 0;
    Polynomial t(nvars_);
    t.add_term(rest, c);
    r += t * powers[e[var]];
  }
  return r;
}

std::int64_t Polynomial::eval(const std::vector<std::int64_t>& x) const {
  if (x.size() != nvars_) throw Error(Errc::Usage, "evaluation point has wrong length");
  std::int64_t s = 0;
  for (const auto& [e, c] : terms_) {
    std::int64_t t = c;
    for (unsigned i = 0; i < nvars_; ++i)
      for (unsigned j = 0; j < e[i]; ++j) t = checked_mul(t, x[i]);
    s = checked_add(s, t);
  }
  return s;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponents, std::int64_t>> ts(terms_.begin(), terms_.end());
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    const unsigned da = degree_of(a.first), db = degree_of(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ts) {
    std::int64_t mag = c < 0 ? -c : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    std::string mono;
    for (unsigned i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      os << mag;
    else if (mag == 1)
      os << mono;
    else
      os << mag << "*" << mono;
  }
  return os.str();
}

Polynomial parse_polynomial(std::string_view text, unsigned nvars) { return Parser(text, nvars).parse(); }

}  // namespace zetalab
