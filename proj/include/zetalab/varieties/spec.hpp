#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "zetalab/varieties/polynomial.hpp"

namespace zetalab {

enum class Ambient { Affine, Projective };

/// Locally closed X inside A^n or P^n, with f: X -> A^1 and an optional base
/// map u: X -> A^d. An absent f is the zero polynomial.
struct VarietySpec {
  Ambient ambient = Ambient::Affine;
  unsigned dim = 0;
  std::vector<Polynomial> equations;
  std::vector<Polynomial> inequations;
  Polynomial f{0};
  std::optional<std::vector<Polynomial>> base_map;

  static VarietySpec affine(unsigned dim);
  static VarietySpec projective(unsigned dim);

  bool projective() const { return ambient == Ambient::Projective; }
  /// Number of coordinates (dim for affine, dim + 1 for projective).
  unsigned nvars() const { return projective() ? dim + 1 : dim; }
  unsigned base_dim() const { return base_map ? static_cast<unsigned>(base_map->size()) : 0; }

  // Builders; strings use x0..x{nvars-1}.
  VarietySpec& equation(std::string_view poly);
  VarietySpec& inequation(std::string_view poly);
  VarietySpec& with_f(std::string_view poly);
  VarietySpec& with_base_map(const std::vector<std::string>& polys);

  /// Throws NonHomogeneous or ProjectiveWithNonzeroF.
  void validate() const;
  /// Sorted-key JSON text; identical presentations give identical strings.
  std::string canonical() const;

  friend bool operator==(const VarietySpec& a, const VarietySpec& b) { return a.canonical() == b.canonical(); }
};

nlohmann::json to_json(const VarietySpec& spec);
/// Throws ParseError on malformed documents or polynomials.
VarietySpec spec_from_json(const nlohmann::json& doc);
/// Reads a JSON spec file (IoError / ParseError).
VarietySpec load_spec(const std::string& path);

/// Affine spec with the same points: the disjoint union of the standard
/// charts (first nonzero coordinate 1). Affine specs are returned unchanged.
VarietySpec affine_model(const VarietySpec& x);

// Combinators. Projective inputs are replaced by their affine models.

/// X x Y with f = f_X + f_Y; base maps concatenate when both are present.
VarietySpec product(const VarietySpec& x, const VarietySpec& y);
/// X x_S Y over a common base A^d: adds u_X(x) = u_Y(y); base map u_X, f summed.
VarietySpec fibered_product(const VarietySpec& x, const VarietySpec& y);
/// X disjoint-union Y, realized inside A^{max(n,m)+1} through a selector
/// coordinate z with z(z-1) = 0.
VarietySpec disjoint_union(const VarietySpec& x, const VarietySpec& y);
/// (X x A^1, f + t) with t the new last coordinate.
VarietySpec phi(const VarietySpec& x);
VarietySpec with_equation(VarietySpec x, std::string_view poly);
VarietySpec with_inequation(VarietySpec x, std::string_view poly);

namespace catalog {
VarietySpec point();
VarietySpec affine_space(unsigned n);
VarietySpec affine_line_id();
VarietySpec affine_line_square();
VarietySpec gm_id();
VarietySpec gm();
VarietySpec projective_space(unsigned n);
/// x0^2 + x1^2 = 1 in A^2 with f = x0*x1.
VarietySpec circle_xy();
/// A^2 minus {x0*x1 = 0} with f = x0 + x1.
VarietySpec torus_sum();
}  // namespace catalog

}  // namespace zetalab
