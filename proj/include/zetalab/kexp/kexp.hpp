#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zetalab/cyclofield/character.hpp"
#include "zetalab/cyclofield/cyclotomic.hpp"
#include "zetalab/numeric.hpp"
#include "zetalab/varieties/counting.hpp"
#include "zetalab/varieties/spec.hpp"

namespace zetalab {

/// Integer combination of generators [X, f] or [X, f]_S, S = A^d through the
/// spec's base map. Generators with the same canonical form share a
/// coefficient; zero coefficients are dropped.
class KExpClass {
 public:
  KExpClass() = default;
  static KExpClass generator(const VarietySpec& x, const Integer& coef = 1);

  std::vector<std::pair<Integer, VarietySpec>> terms() const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  KExpClass& operator+=(const KExpClass& o);
  KExpClass& operator-=(const KExpClass& o);
  friend KExpClass operator+(KExpClass a, const KExpClass& b) { return a += b; }
  friend KExpClass operator-(KExpClass a, const KExpClass& b) { return a -= b; }
  friend KExpClass operator*(const Integer& n, const KExpClass& c);
  friend bool operator==(const KExpClass& a, const KExpClass& b);

 private:
  std::map<std::string, std::pair<Integer, VarietySpec>> terms_;
  void add(const Integer& coef, const VarietySpec& x);
};

/// Product of generators: X x Y with f summed when both are absolute, the
/// fibered product over A^d when both carry base maps. BaseMismatch otherwise.
KExpClass kexp_mul(const KExpClass& a, const KExpClass& b);

/// Every character of F_q, the trivial one first.
std::vector<AdditiveCharacter> all_characters(u64 p, unsigned k);

/// mu_chi(c) = sum of coef * sum_{x in X(F_{q^m})} chi(Tr f(x)).
CyclotomicInt realize(const KExpClass& c, const AdditiveCharacter& chi, unsigned m = 1, const CountOptions& opts = {});

struct AnnihilatorEntry {
  u64 q = 0;
  std::string twist;
  CyclotomicInt value;
  bool in_contract = true;  // false for the trivial character
};

struct AnnihilatorReport {
  std::vector<AnnihilatorEntry> entries;
};

/// Realizes c under each character; NonzeroRealization for a nontrivial one
/// with a nonzero value. Trivial characters are recorded, not asserted.
AnnihilatorReport annihilator_check(const KExpClass& c, const std::vector<AdditiveCharacter>& chars,
                                    const CountOptions& opts = {});

/// Psi on V(F_q) = F_q^d. Entry i belongs to the point whose coordinates are
/// the base-q digits of i (x0 most significant) read through FiniteField::from_index.
struct MotFunction {
  AdditiveCharacter chi;
  unsigned d = 0;
  std::vector<CyclotomicInt> values;

  u64 q() const { return chi.field().size(); }
  /// q^d.
  u64 expected_size() const;
  std::vector<u64> coords(u64 index) const;
  u64 index_of(const std::vector<u64>& coords) const;
  /// Header s0..s{d-1},c0..c{p-2}; coordinates as field indices.
  std::string to_csv() const;

  friend bool operator==(const MotFunction& a, const MotFunction& b) {
    return a.d == b.d && a.values == b.values && a.q() == b.q();
  }
};

/// Psi(s) = sum over the fibre X_s(F_q) of chi(f(x)), summed over the terms.
/// MissingBaseMap for an absolute generator, BaseMismatch for mixed d.
MotFunction realize_relative(const KExpClass& c, const AdditiveCharacter& chi, const CountOptions& opts = {});

/// [X x V^dual, f + <u, y>]_{V^dual} per generator, linear in c.
KExpClass fourier_symbolic(const KExpClass& c);

/// Psi-hat(y) = sum_s Psi(s) chi(<s, y>). IncompleteTable if the table does
/// not cover V(F_q).
MotFunction fourier_realized(const MotFunction& psi);

/// s -> Psi(-s).
MotFunction reflect(const MotFunction& psi);
MotFunction scale(const MotFunction& psi, const Integer& n);

struct InversionReport {
  u64 q = 0;
  unsigned d = 0;
  std::size_t points = 0;
  bool square_commutes = false;  // realize(F c) == fourier_realized(realize c)
  bool linear_base_map = false;
  std::string covering_note;
};

/// realize(F F c)(s) == q^d realize(c)(-s) on every s, plus the commuting
/// square for F. Mismatch with the base point and both sides otherwise.
InversionReport inversion_check(const KExpClass& c, const AdditiveCharacter& chi, const CountOptions& opts = {});

struct PoissonReport {
  u64 h_size = 0;
  u64 h_perp_size = 0;
  CyclotomicInt sum_h;       // sum over H of Psi
  CyclotomicInt sum_h_perp;  // sum over H-perp of Psi-hat
};

/// sum_H Psi == (1 / |H-perp|) sum_{H-perp} Psi-hat, with H cut out by
/// linear forms in x0..x{d-1}. NotASubgroup for non-linear or inhomogeneous
/// forms; Mismatch if the identity fails.
PoissonReport poisson_finite_check(const MotFunction& psi, const std::vector<Polynomial>& h_forms);

/// Named relative classes over A^d (d = 1, 2): deltas, the constant class,
/// a quadratic phase, a conic, a non-linear base map and a combination.
std::vector<std::pair<std::string, KExpClass>> relative_corpus(unsigned d);

nlohmann::json to_json(const KExpClass& c);
/// [{"coef": n, "spec": {...}} or {"coef": n, "spec_ref": "file.json"}], refs
/// resolved against base_dir.
KExpClass kexp_from_json(const nlohmann::json& doc, const std::string& base_dir = ".");

}  // namespace zetalab
