#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zetalab/error.hpp"
#include "zetalab/heights/heights.hpp"
#include "zetalab/numeric.hpp"
#include "zetalab/varieties/spec.hpp"

namespace zetalab {

/// Locally closed pieces declared to cover `target` disjointly. Pieces live
/// in the target's ambient space.
struct Decomposition {
  std::string name;
  VarietySpec target;
  std::vector<VarietySpec> pieces;
};

struct Realization {
  enum class Kind { PointCount, ExpSum, HeightCount };
  Kind kind = Kind::PointCount;
  u64 p = 2;
  unsigned k = 1;
  unsigned m = 1;             // extension degree over F_q
  std::uint64_t bound = 1;    // height bound B
  unsigned height_degree = 1; // O(height_degree)

  static Realization point_count(u64 p, unsigned k, unsigned m) { return {Kind::PointCount, p, k, m, 1, 1}; }
  /// Character with twist 1 on F_q.
  static Realization exp_sum(u64 p, unsigned k, unsigned m) { return {Kind::ExpSum, p, k, m, 1, 1}; }
  static Realization height_count(std::uint64_t B, unsigned degree = 1) {
    return {Kind::HeightCount, 2, 1, 1, B, degree};
  }
  /// "point-count(q=9,m=2)", "exp-sum(q=3,m=1)", "height-count(B=50,O(1))".
  std::string tag() const;
};

struct Witness {
  Errc kind = Errc::TotalMismatch;  // Uncovered, DoubleCovered or TotalMismatch
  std::vector<std::string> point;   // coordinates, empty for pure total mismatches
  std::vector<std::size_t> pieces;  // pieces containing the point
  std::string lhs, rhs;             // totals
};

struct RealizationReport {
  std::string tag;
  bool pass = true;
  std::optional<Witness> witness;
};

/// Finite-field realizations walk X(F_{q^m}) and locate every point in the
/// pieces, then compare totals from the counting kernel; pieces inherit the
/// target's f. Height realizations compare counts at the bound. Failures
/// are reported, not thrown.
std::vector<RealizationReport> verify_disjoint_cover(const Decomposition& d, const std::vector<Realization>& rs,
                                                     const HeightOptions& opts = {});

bool all_pass(const std::vector<RealizationReport>& reports);

/// Points of a not in b, as disjoint locally closed pieces of a's ambient.
std::vector<VarietySpec> difference_pieces(const VarietySpec& a, const VarietySpec& b);
/// Points on both.
VarietySpec intersection(const VarietySpec& a, const VarietySpec& b);

using ClassRegistry = std::map<std::string, VarietySpec>;

/// [left] = sum of [right].
struct LedgerRelation {
  std::string left;
  std::vector<std::string> right;
  std::string provenance;
};

struct SigmaOptions {
  unsigned m = 1;
  std::vector<std::uint64_t> grid;
  double margin = 0.25;
  double tolerance = 0.25;
};

/// sigma-hat per class, nullopt for classes with no points on the grid.
/// For a two-term relation [U] = [V] + [W]: complement_consistent is
/// |sigma(W) - sigma(U)| < tolerance, sieve is sigma(V) < sigma(U) - margin.
struct SigmaConsistency {
  std::optional<double> left;
  std::vector<std::optional<double>> right;
  bool complement_consistent = false;
  bool sieve = false;
};

struct LedgerReport {
  LedgerRelation relation;
  std::vector<RealizationReport> realizations;
  std::optional<SigmaConsistency> sigma;
  bool pass() const { return all_pass(realizations); }
};

/// Additivity of the totals under each realization. Each class keeps its
/// own f. Unknown ids throw ParseError.
LedgerReport ledger_check(const LedgerRelation& rel, const ClassRegistry& classes, const std::vector<Realization>& rs,
                          const std::optional<SigmaOptions>& sigma = std::nullopt, const HeightOptions& opts = {});

struct Stratification {
  std::vector<VarietySpec> chain;  // U = V0 > V1 > ...
  std::vector<double> sigmas;
  Decomposition decomposition;     // pieces V_i \ V_{i+1}, then the last stratum
  std::optional<Errc> status;      // NoStrictDrop when the chain is U alone
};

/// Greedy chain from U through the candidates: each step moves to a
/// candidate inside the current stratum whose sigma-hat drops by more than
/// the margin, the largest drop first; ties go to the candidate whose
/// continuation has fewer pieces.
Stratification stratify(const VarietySpec& u, const std::vector<VarietySpec>& candidates, const SigmaOptions& sigma,
                        const HeightOptions& opts = {});

struct CompositionCheck {
  Accumulation outer = Accumulation::None;     // V in U
  Accumulation inner = Accumulation::None;     // W in V
  Accumulation composed = Accumulation::None;  // W in U
  double liminf_outer = 0, liminf_inner = 0, liminf_composed = 0;
  bool bound_holds = false;  // liminf_composed >= liminf_inner * liminf_outer
};

struct AssemblerReport {
  RealizationReport report;
  AccumulationReport direct;
  std::optional<CompositionCheck> composition;
};

/// Accumulation of v in u against the requested mode (Strong also meets
/// Weak). With `inner` (inside v) the nested triple is checked as well.
AssemblerReport accumulation_assembler_check(const VarietySpec& u, const VarietySpec& v, Accumulation mode, unsigned m,
                                             const std::vector<std::uint64_t>& grid,
                                             const std::optional<VarietySpec>& inner = std::nullopt,
                                             const AccumulationThresholds& th = {}, const HeightOptions& opts = {});

/// Affine and projective cell structures used by the ledger self-check.
std::vector<Decomposition> canonical_decompositions();
/// A^1 covered by A^1 and {0}.
Decomposition broken_decomposition();
/// Point counts and exp sums over F_2, F_3, F_5, F_4 at m = 1, 2, plus height
/// counts at B = 10, 30 for projective targets.
std::vector<Realization> default_realizations(const VarietySpec& target);

nlohmann::json to_json(const RealizationReport& r);
nlohmann::json to_json(const LedgerReport& r);
/// Relations file: [{"left": id, "right": [ids], "provenance": text}].
std::vector<LedgerRelation> relations_from_json(const nlohmann::json& doc);

}  // namespace zetalab
