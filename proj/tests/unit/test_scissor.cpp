#include <doctest.h>

#include "oracles.hpp"
#include "zetalab/error.hpp"
#include "zetalab/scissor/scissor.hpp"

using namespace zetalab;

namespace {

const VarietySpec kLine = VarietySpec::projective(2).equation("x1");
const VarietySpec kConic = VarietySpec::projective(2).equation("x0*x2 - x1^2");
const VarietySpec kLineConic = VarietySpec::projective(2).equation("x1*(x0*x2 - x1^2)");

Integer oracle_count(const VarietySpec& x, u64 p, unsigned k) {
  return oracle::count(x, build_field(p, k), 1);
}

}  // namespace

TEST_CASE("canonical decompositions pass every realization") {
  const auto all = canonical_decompositions();
  CHECK(all.size() == 10);
  for (const auto& d : all) {
    INFO(d.name);
    const auto reports = verify_disjoint_cover(d, default_realizations(d.target));
    for (const auto& r : reports) {
      INFO(r.tag);
      CHECK(r.pass);
    }
    // Independent counts over F_3, F_4, F_5.
    for (auto [p, k] : std::vector<std::pair<u64, unsigned>>{{3, 1}, {2, 2}, {5, 1}}) {
      Integer sum = 0;
      for (const auto& piece : d.pieces) sum += oracle_count(piece, p, k);
      CHECK(sum == oracle_count(d.target, p, k));
    }
  }
}

TEST_CASE("cell counts") {
  const auto all = canonical_decompositions();
  const FiniteField f3 = build_field(3, 1);
  for (u64 q : {2, 3, 5}) {
    const FiniteField fq = build_field(q, 1);
    CHECK(point_count(all[0].pieces[0], fq, 1) == 1);
    CHECK(point_count(all[0].pieces[1], fq, 1) == q - 1);
  }
  CHECK(point_count(all[4].pieces[0], f3, 1) == 9);
  CHECK(point_count(all[4].pieces[1], f3, 1) == 4);
  CHECK(point_count(all[4].target, f3, 1) == 13);
}

TEST_CASE("failing covers carry witnesses") {
  const auto broken = verify_disjoint_cover(broken_decomposition(), {Realization::point_count(3, 1, 1)});
  REQUIRE(broken.size() == 1);
  CHECK_FALSE(broken[0].pass);
  REQUIRE(broken[0].witness);
  CHECK(broken[0].witness->kind == Errc::DoubleCovered);
  CHECK(broken[0].witness->point == std::vector<std::string>{"[0]"});
  CHECK(broken[0].witness->pieces == std::vector<std::size_t>{0, 1});

  Decomposition gap{"A1 = {0}", catalog::affine_line_id(), {VarietySpec::affine(1).equation("x0")}};
  auto r = verify_disjoint_cover(gap, {Realization::exp_sum(2, 1, 1)});
  REQUIRE(r[0].witness);
  CHECK(r[0].witness->kind == Errc::Uncovered);
  CHECK(r[0].witness->point == std::vector<std::string>{"[1]"});
  CHECK(r[0].witness->pieces.empty());

  Decomposition spill{"{0} = A1", VarietySpec::affine(1).equation("x0"), {VarietySpec::affine(1)}};
  r = verify_disjoint_cover(spill, {Realization::point_count(2, 1, 1)});
  REQUIRE(r[0].witness);
  CHECK(r[0].witness->kind == Errc::TotalMismatch);
  CHECK(r[0].witness->point == std::vector<std::string>{"[1]"});

  Decomposition heights{"P2 = A2", catalog::projective_space(2), {VarietySpec::projective(2).inequation("x0")}};
  r = verify_disjoint_cover(heights, {Realization::height_count(5)});
  REQUIRE(r[0].witness);
  CHECK(r[0].witness->kind == Errc::TotalMismatch);
  CHECK(r[0].witness->lhs == std::to_string(count_points(catalog::projective_space(2), 1, 5)));

  Decomposition mixed{"mixed", catalog::projective_space(1), {VarietySpec::affine(2)}};
  CHECK_THROWS_WITH_AS(verify_disjoint_cover(mixed, {}), doctest::Contains("Mismatch"), Error);
}

TEST_CASE("set differences split into disjoint pieces") {
  const std::vector<VarietySpec> specs{
      VarietySpec::affine(2).equation("x0^2 + x1^2 - 1"), VarietySpec::affine(2).equation("x0").inequation("x1 - 1"),
      VarietySpec::affine(2).inequation("x0*x1"), VarietySpec::affine(2).equation("x0 - x1").equation("x0^3 - x0"),
      VarietySpec::affine(2).inequation("x0").inequation("x1 + 1")};
  for (const auto& a : specs)
    for (const auto& b : specs)
      for (u64 p : {2, 3, 5}) {
        Integer sum = oracle_count(intersection(a, b), p, 1);
        const auto pieces = difference_pieces(a, b);
        for (const auto& piece : pieces) sum += oracle_count(piece, p, 1);
        CHECK(sum == oracle_count(a, p, 1));
        Decomposition d{"diff", a, pieces};
        d.pieces.push_back(intersection(a, b));
        CHECK(all_pass(verify_disjoint_cover(d, {Realization::point_count(p, 1, 1), Realization::exp_sum(p, 1, 2)})));
      }
}

TEST_CASE("refinements compose") {
  // P2 = {x0 != 0} + {x0 = 0}, then the hyperplane split once more.
  const auto coarse = canonical_decompositions()[4];
  const auto fine = canonical_decompositions()[5];
  Decomposition inner{"P1 in P2", coarse.pieces[1], {fine.pieces[1], fine.pieces[2]}};
  const std::vector<Realization> rs{Realization::point_count(3, 1, 2), Realization::height_count(20)};
  CHECK(all_pass(verify_disjoint_cover(coarse, rs)));
  CHECK(all_pass(verify_disjoint_cover(inner, rs)));
  CHECK(all_pass(verify_disjoint_cover(fine, rs)));
  Decomposition bad_inner{"P1 in P2", coarse.pieces[1], {fine.pieces[1]}};
  CHECK_FALSE(all_pass(verify_disjoint_cover(bad_inner, rs)));
  Decomposition composed{"composed", coarse.target, {coarse.pieces[0], fine.pieces[1]}};
  CHECK_FALSE(all_pass(verify_disjoint_cover(composed, rs)));
}

TEST_CASE("reports do not depend on threads") {
  const auto d = canonical_decompositions()[8];
  HeightOptions par;
  par.threads = 3;
  const auto rs = default_realizations(d.target);
  CHECK(to_json(verify_disjoint_cover(d, rs)[0]).dump() == to_json(verify_disjoint_cover(d, rs, par)[0]).dump());
  for (std::size_t i = 0; i < rs.size(); ++i)
    CHECK(to_json(verify_disjoint_cover(d, rs)[i]).dump() == to_json(verify_disjoint_cover(d, rs, par)[i]).dump());
}

TEST_CASE("ledger relations") {
  ClassRegistry classes{{"U", kLineConic},
                        {"V", kConic},
                        {"W", with_inequation(kLine, "x0*x2 - x1^2")},
                        {"P1", catalog::projective_space(1)},
                        {"empty", VarietySpec::projective(1).equation("x0").equation("x1")},
                        {"A1", catalog::affine_line_id()},
                        {"pt", VarietySpec::affine(1).equation("x0").with_f("x0")},
                        {"Gm", catalog::gm_id()}};

  SigmaOptions so;
  so.grid = dyadic_grid(100);
  std::vector<Realization> rs{Realization::point_count(3, 1, 1), Realization::point_count(2, 2, 2)};
  for (std::uint64_t B : so.grid) rs.push_back(Realization::height_count(B));
  auto rep = ledger_check({"U", {"V", "W"}, "open/closed split"}, classes, rs, so);
  CHECK(rep.pass());
  REQUIRE(rep.sigma);
  CHECK(*rep.sigma->left == doctest::Approx(2.0).epsilon(0.1));
  CHECK(*rep.sigma->right[0] == doctest::Approx(1.0).epsilon(0.15));
  CHECK(*rep.sigma->right[1] == doctest::Approx(2.0).epsilon(0.1));
  CHECK(rep.sigma->complement_consistent);
  CHECK(rep.sigma->sieve);

  rep = ledger_check({"P1", {"empty", "P1"}, "trivial"}, classes, rs, so);
  CHECK(rep.pass());
  CHECK_FALSE(rep.sigma->right[0]);
  CHECK(rep.sigma->sieve);

  rep = ledger_check({"A1", {"pt", "Gm"}, "cell decomposition"}, classes, {Realization::exp_sum(2, 1, 1)});
  CHECK(rep.pass());
  // Character values over F_2: chi(0) = 1, chi(1) = -1.
  const FiniteField f2 = build_field(2, 1);
  auto value = [&](const char* id) {
    const auto h = oracle::histogram(classes[id], f2, f2.one(), 1);
    return Integer(h[0] - h[1]);
  };
  CHECK(value("A1") == 0);
  CHECK(value("pt") == 1);
  CHECK(value("Gm") == -1);

  rep = ledger_check({"A1", {"Gm"}, "missing"}, classes, {Realization::point_count(5, 1, 1)});
  CHECK_FALSE(rep.pass());
  CHECK(rep.realizations[0].witness->lhs == "5");
  CHECK(rep.realizations[0].witness->rhs == "4");

  CHECK_THROWS_WITH_AS(ledger_check({"A1", {"nope"}, ""}, classes, {}), doctest::Contains("ParseError"), Error);

  const auto doc = nlohmann::json::parse(R"([{"left":"U","right":["V","W"],"provenance":"split"}])");
  const auto rels = relations_from_json(doc);
  REQUIRE(rels.size() == 1);
  CHECK(rels[0].right == std::vector<std::string>{"V", "W"});
  CHECK_THROWS_WITH_AS(relations_from_json(nlohmann::json::parse(R"([{"left":1}])")), doctest::Contains("ParseError"),
                       Error);
}

TEST_CASE("arithmetic stratification") {
  SigmaOptions so;
  so.grid = dyadic_grid(100);
  auto s = stratify(kLineConic, {kConic}, so);
  CHECK_FALSE(s.status);
  REQUIRE(s.chain.size() == 2);
  CHECK(s.sigmas[0] == doctest::Approx(2.0).epsilon(0.1));
  CHECK(s.sigmas[1] == doctest::Approx(1.0).epsilon(0.15));
  CHECK(all_pass(verify_disjoint_cover(s.decomposition,
                                       {Realization::point_count(3, 1, 1), Realization::height_count(100)})));

  s = stratify(catalog::projective_space(1), {}, so);
  CHECK(s.status == Errc::NoStrictDrop);
  CHECK(s.chain.size() == 1);
  CHECK(s.decomposition.pieces.size() == 1);

  s = stratify(VarietySpec::projective(2).equation("x1*x2"), {kLine}, so);
  CHECK(s.status == Errc::NoStrictDrop);

  // A candidate outside the current stratum is skipped.
  s = stratify(kLineConic, {VarietySpec::projective(2).equation("x0*x1 - x2^2")}, so);
  CHECK(s.status == Errc::NoStrictDrop);

  // The largest first drop wins: P2 > point (3 -> 0) over P2 > line (3 -> 2).
  const VarietySpec point = VarietySpec::projective(2).equation("x1").equation("x2");
  SigmaOptions p2;
  p2.grid = dyadic_grid(40);
  s = stratify(catalog::projective_space(2), {kLine, point}, p2);
  REQUIRE(s.chain.size() == 2);
  CHECK(s.chain[1] == point);
  CHECK(s.sigmas[1] == doctest::Approx(0.0));
  CHECK(all_pass(verify_disjoint_cover(s.decomposition, {Realization::point_count(5, 1, 1)})));

  // The line has no drop inside line+conic; the point does.
  const VarietySpec conic_point = VarietySpec::projective(2).equation("x1").equation("x0");
  s = stratify(kLineConic, {kLine, conic_point}, so);
  REQUIRE(s.chain.size() == 2);
  CHECK(s.chain[1] == conic_point);
}

TEST_CASE("accumulation assembler") {
  const VarietySpec triple = VarietySpec::projective(2).equation("x1*(x0*x2 - x1^2)*(x0*x1 - x2^2)");
  const auto grid = dyadic_grid(60);
  auto r = accumulation_assembler_check(triple, kLineConic, Accumulation::Strong, 1, grid, kLine);
  CHECK(r.report.pass);
  REQUIRE(r.composition);
  CHECK(r.composition->composed == Accumulation::Strong);
  CHECK(r.composition->bound_holds);

  r = accumulation_assembler_check(kLineConic, kLineConic, Accumulation::Strong, 1, grid);
  CHECK(r.report.pass);
  CHECK(r.direct.ratios.back() == 1.0);

  r = accumulation_assembler_check(kLineConic, kConic, Accumulation::Weak, 1, grid);
  CHECK_FALSE(r.report.pass);
  REQUIRE(r.report.witness);
  CHECK(r.report.witness->lhs == "none");

  CHECK(accumulation_assembler_check(VarietySpec::projective(2).equation("x1*x2"), kLine, Accumulation::Weak, 1, grid)
            .report.pass);
  CHECK_THROWS_WITH_AS(accumulation_assembler_check(kLine, kConic, Accumulation::Weak, 1, grid),
                       doctest::Contains("NotASubvariety"), Error);
}
