#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zetalab/cyclofield/cyclo_rational.hpp"
#include "zetalab/zetas/series.hpp"

namespace zetalab {

/// P/Q with P(0) = Q(0) = 1, checked against the source through t^verified_to.
template <class F>
struct RationalCandidate {
  std::vector<F> P, Q;
  unsigned verified_to = 0;

  unsigned deg_p() const { return static_cast<unsigned>(P.size()) - 1; }
  unsigned deg_q() const { return static_cast<unsigned>(Q.size()) - 1; }
};

namespace detail {

inline bool field_is_zero(const Rational& v) { return v == 0; }
inline bool field_is_zero(const CycRational& v) { return v.is_zero(); }
inline Rational field_inverse(const Rational& v) { return 1 / v; }
inline CycRational field_inverse(const CycRational& v) { return v.inverse(); }

/// Solves A x = b by Gauss-Jordan elimination; free unknowns set to zero.
template <class F>
std::optional<std::vector<F>> solve_linear(std::vector<std::vector<F>> A, std::vector<F> b, const F& zero) {
  const std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && field_is_zero(A[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[r]);
    std::swap(b[piv], b[r]);
    const F inv = field_inverse(A[r][c]);
    for (std::size_t j = c; j < cols; ++j) A[r][j] = A[r][j] * inv;
    b[r] = b[r] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || field_is_zero(A[i][c])) continue;
      const F factor = A[i][c];
      for (std::size_t j = c; j < cols; ++j) A[i][j] = A[i][j] - factor * A[r][j];
      b[i] = b[i] - factor * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!field_is_zero(b[i])) return std::nullopt;
  std::vector<F> x(cols, zero);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

}  // namespace detail

/// Power series of P/Q through t^T.
template <class F>
Series<F> expand(const RationalCandidate<F>& c, unsigned T) {
  const F zero = zero_like(c.Q[0]);
  const F inv0 = detail::field_inverse(c.Q[0]);
  std::vector<F> s(T + 1, zero);
  for (unsigned n = 0; n <= T; ++n) {
    F acc = n < c.P.size() ? c.P[n] : zero;
    for (unsigned i = 1; i < c.Q.size() && i <= n; ++i) acc = acc - c.Q[i] * s[n - i];
    s[n] = acc * inv0;
  }
  return Series<F>(std::move(s));
}

/// Smallest (deg P + deg Q, then deg Q) pair with P/Q = s through t^T.
/// InsufficientOrder when T < 2 max_deg + 2; NoCandidate otherwise on failure.
template <class F>
RationalCandidate<F> rational_reconstruct(const Series<F>& s, unsigned max_deg) {
  const unsigned T = s.order();
  if (T < 2 * max_deg + 2)
    throw Error(Errc::InsufficientOrder, "order " + std::to_string(T) + " < 2*" + std::to_string(max_deg) + "+2");
  const F zero = zero_like(s[0]);
  const F one = one_like(s[0]);
  if (!(s[0] == one)) throw Error(Errc::NoCandidate, "constant term must be 1");
  auto coef = [&](long i) { return i < 0 ? zero : s[static_cast<std::size_t>(i)]; };
  for (unsigned total = 0; total <= 2 * max_deg; ++total) {
    for (unsigned dq = 0; dq <= std::min(total, max_deg); ++dq) {
      const unsigned dp = total - dq;
      if (dp > max_deg) continue;
      // Q = 1 + q_1 t + ... ; coefficients dp+1 .. dp+dq of Q s vanish.
      std::vector<std::vector<F>> A(dq, std::vector<F>(dq, zero));
      std::vector<F> b(dq, zero);
      for (unsigned row = 0; row < dq; ++row) {
        const long j = static_cast<long>(dp + 1 + row);
        for (unsigned i = 1; i <= dq; ++i) A[row][i - 1] = coef(j - static_cast<long>(i));
        b[row] = -coef(j);
      }
      auto sol = detail::solve_linear(A, b, zero);
      if (!sol) continue;
      RationalCandidate<F> c;
      c.Q.push_back(one);
      for (const auto& v : *sol) c.Q.push_back(v);
      for (unsigned n = 0; n <= dp; ++n) {
        F acc = zero;
        for (unsigned i = 0; i < c.Q.size() && i <= n; ++i) acc = acc + c.Q[i] * coef(static_cast<long>(n - i));
        c.P.push_back(acc);
      }
      if (!(expand(c, T) == s)) continue;
      c.verified_to = T;
      return c;
    }
  }
  throw Error(Errc::NoCandidate, "no P/Q with degrees <= " + std::to_string(max_deg) + " matches through t^" +
                                     std::to_string(T));
}

inline Series<Rational> to_rational(const Series<Integer>& s) {
  std::vector<Rational> c;
  for (const auto& v : s.coeffs()) c.emplace_back(v);
  return Series<Rational>(std::move(c));
}

inline Series<CycRational> to_rational(const Series<CyclotomicInt>& s) {
  std::vector<CycRational> c;
  for (const auto& v : s.coeffs()) c.emplace_back(v);
  return Series<CycRational>(std::move(c));
}

inline RationalCandidate<Rational> rational_reconstruct(const Series<Integer>& s, unsigned max_deg) {
  return rational_reconstruct(to_rational(s), max_deg);
}

inline RationalCandidate<CycRational> rational_reconstruct(const Series<CyclotomicInt>& s, unsigned max_deg) {
  return rational_reconstruct(to_rational(s), max_deg);
}

}  // namespace zetalab
