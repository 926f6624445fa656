#include "zetalab/witt/witt.hpp"

#include <sstream>

#include "zetalab/json_util.hpp"
#include "zetalab/zetas/zeta.hpp"

namespace zetalab {

namespace {

void require_square(const RationalMatrix& M) {
  if (M.rows() != M.cols())
    throw Error(Errc::NonSquare, std::to_string(M.rows()) + "x" + std::to_string(M.cols()) + " matrix");
}

Rational determinant(RationalMatrix A) {
  const Eigen::Index n = A.rows();
  Rational det = 1;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    while (piv < n && A(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      A.row(piv).swap(A.row(c));
      det = -det;
    }
    det *= A(c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (A(r, c) == 0) continue;
      const Rational factor = A(r, c) / A(c, c);
      for (Eigen::Index j = c; j < n; ++j) A(r, j) -= factor * A(c, j);
    }
  }
  return det;
}

template <class R>
std::string describe(const R& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Series<Integer> to_integer_series(const Series<Rational>& s, Errc code) {
  std::vector<Integer> c;
  for (unsigned i = 0; i <= s.order(); ++i) {
    if (!is_integral(s[i]))
      throw Error(code, "coefficient of t^" + std::to_string(i) + " is " + s[i].get_str());
    c.push_back(s[i].get_num());
  }
  return Series<Integer>(std::move(c));
}

}  // namespace

Series<Integer> witt_mul(const Series<Integer>& u, const Series<Integer>& v) {
  require_same_order(u, v);
  auto gu = ghost(u), gv = ghost(v);
  for (std::size_t i = 0; i < gu.size(); ++i) gu[i] *= gv[i];
  try {
    return ghost_inverse(gu);
  } catch (const Error& e) {
    if (e.code() != Errc::NonIntegralCoefficient) throw;
    throw Error(Errc::NonIntegralResult, e.what());
  }
}

Series<CyclotomicInt> witt_mul(const Series<CyclotomicInt>& u, const Series<CyclotomicInt>& v) {
  require_same_order(u, v);
  auto gu = ghost(u), gv = ghost(v);
  for (std::size_t i = 0; i < gu.size(); ++i) gu[i] *= gv[i];
  try {
    return ghost_inverse(gu);
  } catch (const Error& e) {
    if (e.code() != Errc::NonIntegralCoefficient) throw;
    throw Error(Errc::NonIntegralResult, e.what());
  }
}

std::vector<Rational> reciprocal_char_poly(const RationalMatrix& M) {
  require_square(M);
  const auto n = static_cast<unsigned>(M.rows());
  // det(1 - jM) at j = 0..n, then Lagrange interpolation.
  const RationalMatrix I = RationalMatrix::Identity(n, n);
  std::vector<Rational> coeffs(n + 1, Rational(0));
  for (unsigned j = 0; j <= n; ++j) {
    const Rational y = determinant(I - Rational(j) * M);
    if (y == 0) continue;
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (unsigned i = 0; i <= n; ++i) {
      if (i == j) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= Rational(i) * basis[k];
      }
      basis = std::move(next);
      denom *= Rational(static_cast<long>(j) - static_cast<long>(i));
    }
    for (unsigned k = 0; k <= n; ++k) coeffs[k] += y * basis[k] / denom;
  }
  return coeffs;
}

Series<Rational> L_map(const RationalMatrix& M, unsigned T) {
  const auto d = reciprocal_char_poly(M);
  std::vector<Rational> c(T + 1, Rational(0));
  for (std::size_t i = 0; i < d.size() && i <= T; ++i) c[i] = d[i];
  return series_inverse(Series<Rational>(std::move(c)));
}

Series<Integer> L_map(const IntegerMatrix& M, unsigned T) {
  return to_integer_series(L_map(RationalMatrix(M.cast<Rational>()), T), Errc::NonIntegralResult);
}

RationalMatrix companion(const std::vector<Rational>& poly) {
  std::size_t d = poly.size();
  while (d > 1 && poly[d - 1] == 0) --d;
  const auto n = static_cast<Eigen::Index>(d - 1);
  RationalMatrix C = RationalMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) C(i + 1, i) = 1;
  for (Eigen::Index i = 0; i < n; ++i) C(i, n - 1) = -poly[static_cast<std::size_t>(n - i)];
  return C;
}

RationalMatrix direct_sum(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix r = RationalMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  r.topLeftCorner(a.rows(), a.cols()) = a;
  r.bottomRightCorner(b.rows(), b.cols()) = b;
  return r;
}

RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

TraceIdentityReport trace_identity_check(const RationalMatrix& M, unsigned T) {
  require_square(M);
  std::vector<Rational> traces;
  RationalMatrix power = RationalMatrix::Identity(M.rows(), M.cols());
  for (unsigned m = 1; m <= T; ++m) {
    power = (power * M).eval();
    traces.push_back(power.trace());
  }
  TraceIdentityReport rep{exp_power_sums(traces, T), L_map(M, T)};
  const long i = first_difference(rep.trace_side, rep.determinant_side);
  if (i >= 0)
    throw Error(Errc::Mismatch, "t^" + std::to_string(i) + ": " + describe(rep.trace_side[i]) + " vs " +
                                    describe(rep.determinant_side[i]));
  return rep;
}

Series<Rational> EndoClass::value(unsigned T) const { return witt_sub(L_map(plus, T), L_map(minus, T)); }

namespace {

nlohmann::json part_json(const RationalMatrix& M) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(rational_json(M(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"rank", M.rows()}, {"matrix", rows}};
}

RationalMatrix part_from_json(const nlohmann::json& doc) {
  try {
    const auto n = doc.at("rank").get<Eigen::Index>();
    const auto& rows = doc.at("matrix");
    if (static_cast<Eigen::Index>(rows.size()) != n) throw Error(Errc::ParseError, "rank does not match matrix");
    RationalMatrix M(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != n) throw Error(Errc::NonSquare, "row " + std::to_string(i));
      for (Eigen::Index j = 0; j < n; ++j) M(i, j) = rational_from_json(rows[i][j]);
    }
    return M;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

}  // namespace

nlohmann::json to_json(const EndoClass& e) { return {{"plus", part_json(e.plus)}, {"minus", part_json(e.minus)}}; }

EndoClass endo_class_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("plus") || !doc.contains("minus"))
    throw Error(Errc::ParseError, "endomorphism class needs \"plus\" and \"minus\"");
  return {part_from_json(doc["plus"]), part_from_json(doc["minus"])};
}

EndoClass zeta_lift(const RationalCandidate<Rational>& rc) {
  if (rc.verified_to == 0) throw Error(Errc::UnverifiedCandidate, "candidate was not verified against a series");
  if (rc.P.empty() || rc.Q.empty() || rc.P[0] != 1 || rc.Q[0] != 1)
    throw Error(Errc::UnverifiedCandidate, "candidate must satisfy P(0) = Q(0) = 1");
  EndoClass e{companion(rc.Q), companion(rc.P)};
  const long i = first_difference(e.value(rc.verified_to), expand(rc, rc.verified_to));
  if (i >= 0) throw Error(Errc::Mismatch, "lift disagrees with the candidate at t^" + std::to_string(i));
  return e;
}

ExponentiabilityReport exponentiability_check(const VarietySpec& x, const VarietySpec& y, const FiniteField& fq,
                                              unsigned T, const CountOptions& opts) {
  ExponentiabilityReport r;
  r.zeta_x = hw_zeta(x, fq, T, opts);
  r.zeta_y = hw_zeta(y, fq, T, opts);
  r.zeta_union = hw_zeta(disjoint_union(x, y), fq, T, opts);
  r.zeta_product = hw_zeta(product(x, y), fq, T, opts);
  r.witt_sum = witt_add(r.zeta_x, r.zeta_y);
  r.witt_product = witt_mul(r.zeta_x, r.zeta_y);
  if (long i = first_difference(r.witt_sum, r.zeta_union); i >= 0)
    throw Error(Errc::Mismatch, "disjoint union differs at t^" + std::to_string(i) + ": " +
                                    r.witt_sum[i].get_str() + " vs " + r.zeta_union[i].get_str());
  if (long i = first_difference(r.witt_product, r.zeta_product); i >= 0)
    throw Error(Errc::Mismatch, "product differs at t^" + std::to_string(i) + ": " + r.witt_product[i].get_str() +
                                    " vs " + r.zeta_product[i].get_str());
  return r;
}

}  // namespace zetalab
