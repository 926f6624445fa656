#include "zetalab/cli/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "zetalab/error.hpp"
#include "zetalab/heights/heights.hpp"
#include "zetalab/json_util.hpp"
#include "zetalab/kexp/kexp.hpp"
#include "zetalab/scissor/scissor.hpp"
#include "zetalab/witt/witt.hpp"
#include "zetalab/zetas/reconstruct.hpp"
#include "zetalab/zetas/zeta.hpp"

namespace zetalab::cli {

using json = nlohmann::json;

namespace {

const std::vector<std::pair<std::string, std::string>> kCommands{
    {"zeta", "Hasse-Weil zeta by power sums and Euler product"},
    {"expzeta", "Exponential-sum zeta by both routes"},
    {"heights", "Counts by height on a dyadic grid up to --bound"},
    {"witt", "Rational zeta, companion-matrix lift and its L image"},
    {"fourier", "Realized table, its transform and the inversion check for a class file"},
    {"ledger", "Relations file checked under point, exp-sum and height counts"},
    {"stratify", "Greedy stratification from a target and candidates"},
    {"selftest", "Quick identities across all modules"}};

void build_app(CLI::App& app, JobSpec& job) {
  app.require_subcommand(1, 1);
  app.add_option("--spec", job.spec, "Spec, class, ledger or stratification file");
  app.add_option("--p", job.p, "Characteristic");
  app.add_option("--k", job.k, "F_q = F_{p^k}");
  app.add_option("--order", job.order, "Truncation order T (zeta, expzeta, witt) or top level m (ledger)");
  app.add_option("--bound", job.bound, "Height bound B");
  app.add_option("--degree", job.degree, "Height line bundle O(m)");
  app.add_option("--out", job.out, "Output path (stdout when absent)");
  app.add_option("--format", job.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", job.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--budget", job.budget, "Enumeration budget (default from ZETALAB_BUDGET)");
  app.add_option("--twist", job.twist, "Character twist, coefficients in the basis of F_q");
  for (const auto& [name, text] : kCommands) app.add_subcommand(name, text)->fallthrough();
}

void finish_parse(CLI::App& app, JobSpec& job) {
  for (const auto& [name, text] : kCommands)
    if (app.got_subcommand(name)) job.command = name;
  job.twist_defaulted = app.count("--twist") == 0;
  if (job.budget == 0) job.budget = default_budget();
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

std::string dir_of(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  return parent.empty() ? std::string(".") : parent.string();
}

VarietySpec spec_value(const json& v, const std::string& base_dir) {
  if (v.is_string()) return load_spec((std::filesystem::path(base_dir) / v.get<std::string>()).string());
  return spec_from_json(v);
}

const std::string& require_spec(const JobSpec& job) {
  if (job.spec.empty()) throw Error(Errc::Usage, job.command + " needs --spec");
  return job.spec;
}

AdditiveCharacter character(const JobSpec& job) {
  const FiniteField fq = build_field(job.p, job.k);
  std::vector<u64> coeffs;
  std::stringstream in(job.twist);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      coeffs.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw Error(Errc::Usage, "bad --twist entry '" + item + "'");
    }
  }
  if (coeffs.empty() || coeffs.size() > job.k) throw Error(Errc::Usage, "--twist needs 1.." + std::to_string(job.k) + " entries");
  for (auto& c : coeffs) c %= job.p;
  coeffs.resize(job.k, 0);
  return AdditiveCharacter(fq, fq.from_coeffs(coeffs));
}

CountOptions count_options(const JobSpec& job) { return {job.budget, job.threads}; }
HeightOptions height_options(const JobSpec& job) { return {job.budget, job.threads}; }

template <class F>
json candidate_json(const RationalCandidate<F>& c) {
  json num = json::array(), den = json::array();
  for (const auto& v : c.P) num.push_back(value_json(v));
  for (const auto& v : c.Q) den.push_back(value_json(v));
  return {{"numerator", num}, {"denominator", den}, {"verified_to", c.verified_to}};
}

json job_echo(const JobSpec& job) {
  return {{"command", job.command}, {"spec", job.spec},   {"p", job.p},           {"k", job.k},
          {"order", job.order},     {"bound", job.bound}, {"degree", job.degree}, {"format", job.format},
          {"twist", job.twist},     {"twist_defaulted", job.twist_defaulted}};
}

struct Outcome {
  json results = json::object();
  std::string csv;
  bool pass = true;
  json failures = json::array();
};

void run_zeta(const JobSpec& job, Outcome& o) {
  const VarietySpec x = load_spec(require_spec(job));
  const unsigned T = job.order ? job.order : 12;
  const auto routes = hw_zeta_routes(x, build_field(job.p, job.k), T, count_options(job));
  o.results["series"] = series_json(routes.power_sums);
  o.results["euler_product"] = series_json(routes.euler_product);
  o.pass = routes.power_sums == routes.euler_product;
  if (!o.pass)
    o.failures.push_back({{"error", "RouteMismatch"},
                          {"index", first_difference(routes.power_sums, routes.euler_product)}});
  if (T >= 2) try {
      o.results["rational"] = candidate_json(rational_reconstruct(routes.power_sums, (T - 2) / 2));
    } catch (const Error&) {
      o.results["rational"] = nullptr;
    }
}

void run_expzeta(const JobSpec& job, Outcome& o) {
  const VarietySpec x = load_spec(require_spec(job));
  const unsigned T = job.order ? job.order : 8;
  const auto routes = exp_zeta_routes(x, character(job), T, count_options(job));
  o.results["series"] = series_json(routes.power_sums);
  o.results["euler_product"] = series_json(routes.euler_product);
  o.pass = routes.power_sums == routes.euler_product;
  if (!o.pass)
    o.failures.push_back({{"error", "RouteMismatch"},
                          {"index", first_difference(routes.power_sums, routes.euler_product)}});
}

void run_heights(const JobSpec& job, Outcome& o) {
  const VarietySpec x = load_spec(require_spec(job));
  if (job.bound == 0) throw Error(Errc::Usage, "heights needs --bound");
  const auto tbl = height_table(x, job.degree, dyadic_grid(job.bound), height_options(job));
  o.results["grid"] = tbl.bounds;
  o.results["counts"] = tbl.counts;
  try {
    o.results["sigma_hat"] = abscissa_estimate(tbl);
  } catch (const Error& e) {
    o.results["sigma_hat"] = nullptr;
    o.results["sigma_hat_error"] = std::string(errc_name(e.code()));
  }
  try {
    const auto fit = asymptotic_fit(tbl);
    o.results["fit"] = {{"beta", fit.beta}, {"t", fit.t}, {"c", fit.c}, {"residual", fit.residual}};
  } catch (const Error& e) {
    o.results["fit"] = nullptr;
    o.results["fit_error"] = std::string(errc_name(e.code()));
  }
  std::ostringstream csv;
  csv << "B,N\n";
  for (std::size_t i = 0; i < tbl.bounds.size(); ++i) csv << tbl.bounds[i] << "," << tbl.counts[i] << "\n";
  o.csv = csv.str();
}

void run_witt(const JobSpec& job, Outcome& o) {
  const VarietySpec x = load_spec(require_spec(job));
  const unsigned T = job.order ? job.order : 12;
  if (T < 2) throw Error(Errc::Usage, "witt needs --order >= 2");
  const auto series = hw_zeta(x, build_field(job.p, job.k), T, count_options(job));
  const auto cand = rational_reconstruct(series, (T - 2) / 2);
  const EndoClass lift = zeta_lift(cand);
  const auto value = lift.value(T);
  o.results["series"] = series_json(series);
  o.results["rational"] = candidate_json(cand);
  o.results["lift"] = to_json(lift);
  o.pass = value == to_rational(series);
  if (!o.pass) o.failures.push_back({{"error", "Mismatch"}, {"index", first_difference(value, to_rational(series))}});
}

KExpClass class_file(const std::string& path) {
  const json doc = read_json(path);
  if (doc.is_object()) return KExpClass::generator(spec_from_json(doc));
  return kexp_from_json(doc, dir_of(path));
}

void run_fourier(const JobSpec& job, Outcome& o) {
  const KExpClass c = class_file(require_spec(job));
  const AdditiveCharacter chi = character(job);
  const MotFunction psi = realize_relative(c, chi, count_options(job));
  const MotFunction hat = fourier_realized(psi);
  auto table = [](const MotFunction& f) {
    json rows = json::array();
    for (u64 i = 0; i < f.values.size(); ++i) rows.push_back({{"s", f.coords(i)}, {"value", cyclotomic_json(f.values[i])}});
    return rows;
  };
  o.results["table"] = table(psi);
  o.results["transform"] = table(hat);
  const auto rep = inversion_check(c, chi, count_options(job));
  o.results["inversion"] = {{"q", rep.q},
                            {"d", rep.d},
                            {"points", rep.points},
                            {"square_commutes", rep.square_commutes},
                            {"linear_base_map", rep.linear_base_map},
                            {"covering_note", rep.covering_note}};
  o.csv = psi.to_csv();
}

std::vector<Realization> ledger_realizations(const JobSpec& job, bool heights) {
  std::vector<Realization> rs;
  const unsigned top = job.order ? job.order : 2;
  for (unsigned m = 1; m <= top; ++m) {
    rs.push_back(Realization::point_count(job.p, job.k, m));
    rs.push_back(Realization::exp_sum(job.p, job.k, m));
  }
  if (heights && job.bound) rs.push_back(Realization::height_count(job.bound, job.degree));
  return rs;
}

void run_ledger(const JobSpec& job, Outcome& o) {
  const HeightOptions hopts = height_options(job);
  if (job.spec.empty()) {
    json covers = json::array();
    for (const auto& d : canonical_decompositions()) {
      const auto reps = verify_disjoint_cover(d, default_realizations(d.target), hopts);
      json r = json::array();
      for (const auto& x : reps) r.push_back(to_json(x));
      covers.push_back({{"name", d.name}, {"pass", all_pass(reps)}, {"realizations", r}});
      if (!all_pass(reps)) {
        o.pass = false;
        o.failures.push_back({{"decomposition", d.name}, {"realizations", r}});
      }
    }
    const auto broken = verify_disjoint_cover(broken_decomposition(), {Realization::point_count(3, 1, 1)}, hopts);
    o.results["decompositions"] = covers;
    o.results["broken"] = to_json(broken[0]);
    if (broken[0].pass) {
      o.pass = false;
      o.failures.push_back({{"decomposition", broken_decomposition().name}, {"error", "broken cover passed"}});
    }
    return;
  }
  const json doc = read_json(job.spec);
  if (!doc.is_object() || !doc.contains("classes") || !doc.contains("relations"))
    throw Error(Errc::ParseError, job.spec + ": ledger file needs 'classes' and 'relations'");
  ClassRegistry classes;
  bool projective = true;
  for (const auto& [id, v] : doc["classes"].items()) {
    classes.emplace(id, spec_value(v, dir_of(job.spec)));
    projective = projective && classes.at(id).projective();
  }
  const auto rs = ledger_realizations(job, projective);
  json out = json::array();
  for (const auto& rel : relations_from_json(doc["relations"])) {
    const auto rep = ledger_check(rel, classes, rs, std::nullopt, hopts);
    out.push_back(to_json(rep));
    if (!rep.pass()) {
      o.pass = false;
      o.failures.push_back(to_json(rep));
    }
  }
  o.results["relations"] = out;
}

void run_stratify(const JobSpec& job, Outcome& o) {
  const json doc = read_json(require_spec(job));
  if (!doc.is_object() || !doc.contains("target"))
    throw Error(Errc::ParseError, job.spec + ": stratification file needs 'target'");
  const std::string base = dir_of(job.spec);
  const VarietySpec u = spec_value(doc["target"], base);
  std::vector<VarietySpec> candidates;
  for (const auto& c : doc.value("candidates", json::array())) candidates.push_back(spec_value(c, base));
  SigmaOptions so;
  so.m = job.degree;
  so.grid = dyadic_grid(job.bound ? job.bound : 100);
  const auto s = stratify(u, candidates, so, height_options(job));
  json chain = json::array(), pieces = json::array();
  for (const auto& v : s.chain) chain.push_back(to_json(v));
  for (const auto& v : s.decomposition.pieces) pieces.push_back(to_json(v));
  o.results["chain"] = chain;
  o.results["sigmas"] = s.sigmas;
  o.results["pieces"] = pieces;
  o.results["status"] = s.status ? json(std::string(errc_name(*s.status))) : json(nullptr);
}

void run_selftest(const JobSpec&, Outcome& o) {
  const FiniteField f2 = build_field(2, 1), f3 = build_field(3, 1);
  const AdditiveCharacter chi2(f2, f2.one()), chi3(f3, f3.one());
  const std::vector<std::pair<std::string, std::function<bool()>>> checks{
      {"hw closed form A1",
       [&] {
         const auto z = hw_zeta(catalog::affine_space(1), f3, 8);
         for (unsigned n = 0; n <= 8; ++n) {
           Integer qn;
           mpz_ui_pow_ui(qn.get_mpz_t(), 3, n);
           if (z[n] != qn) return false;
         }
         return true;
       }},
      {"expzeta Gm",
       [&] {
         std::vector<CyclotomicInt> c(9, CyclotomicInt(2));
         c[0] = CyclotomicInt(2, 1);
         c[1] = CyclotomicInt(2, -1);
         return exp_zeta(catalog::gm_id(), chi2, 8) == Series<CyclotomicInt>(c);
       }},
      {"gauss square",
       [&] {
         const KExpClass g = KExpClass::generator(catalog::affine_line_square());
         return realize(kexp_mul(g, g), chi3) == CyclotomicInt(3, -3);
       }},
      {"annihilator",
       [&] {
         for (u64 p : {2, 3, 5}) annihilator_check(KExpClass::generator(phi(catalog::circle_xy())), all_characters(p, 1));
         return true;
       }},
      {"fourier inversion",
       [&] {
         for (const auto& [name, c] : relative_corpus(1)) inversion_check(c, chi3);
         return true;
       }},
      {"poisson",
       [&] {
         MotFunction one{chi3, 2, std::vector<CyclotomicInt>(9, CyclotomicInt(3, 1))};
         const auto r = poisson_finite_check(one, {parse_polynomial("x1", 2)});
         return r.h_size == 3 && r.h_perp_size == 3;
       }},
      {"scissor ledger",
       [&] {
         const std::vector<Realization> rs{Realization::point_count(3, 1, 1), Realization::exp_sum(2, 1, 2)};
         for (const auto& d : canonical_decompositions())
           if (!all_pass(verify_disjoint_cover(d, rs))) return false;
         return !all_pass(verify_disjoint_cover(broken_decomposition(), rs));
       }},
      {"schanuel", [&] { return schanuel_check(1, 200).relative_error < 0.05; }},
      {"trace identity",
       [&] {
         RationalMatrix m(2, 2);
         m << 1, 2, -3, 1;
         trace_identity_check(m, 8);
         return true;
       }},
  };
  json verdicts = json::object();
  for (const auto& [name, check] : checks) {
    bool ok = false;
    try {
      ok = check();
    } catch (const Error& e) {
      o.failures.push_back({{"check", name}, {"error", std::string(errc_name(e.code()))}, {"message", e.what()}});
    }
    if (!ok && (o.failures.empty() || o.failures.back().value("check", "") != name))
      o.failures.push_back({{"check", name}, {"error", "Mismatch"}});
    verdicts[name] = ok ? "pass" : "fail";
    o.pass = o.pass && ok;
  }
  o.results["checks"] = verdicts;
}

bool usage_class(Errc e) {
  return e == Errc::Usage || e == Errc::ParseError || e == Errc::IoError || e == Errc::NotPrime || e == Errc::DegreeZero;
}

}  // namespace

JobSpec parse_job(int argc, const char* const* argv) {
  JobSpec job;
  CLI::App app{"zetalab"};
  build_app(app, job);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    throw Error(Errc::Usage, e.what());
  }
  finish_parse(app, job);
  return job;
}

Report run_job(const JobSpec& job) {
  static const std::map<std::string, void (*)(const JobSpec&, Outcome&)> dispatch{
      {"zeta", run_zeta},       {"expzeta", run_expzeta}, {"heights", run_heights},   {"witt", run_witt},
      {"fourier", run_fourier}, {"ledger", run_ledger},   {"stratify", run_stratify}, {"selftest", run_selftest}};
  Report rep;
  Outcome o;
  auto it = dispatch.find(job.command);
  try {
    if (it == dispatch.end()) throw Error(Errc::Usage, "unknown command '" + job.command + "'");
    it->second(job, o);
    rep.exit_code = o.pass ? 0 : 1;
  } catch (const Error& e) {
    o.pass = false;
    o.failures.push_back({{"error", std::string(errc_name(e.code()))}, {"message", e.what()}});
    rep.exit_code = usage_class(e.code()) ? 2 : 1;
  }
  rep.doc = {{"job", job_echo(job)},
             {"results", o.results},
             {"verdict", o.pass ? "pass" : "fail"},
             {"failures", o.failures},
             {"provenance", {{"tool", "zetalab"}, {"version", kVersion}, {"budget", job.budget}}}};
  rep.csv = o.csv;
  return rep;
}

void emit(const Report& report, const JobSpec& job, std::ostream& fallback) {
  std::string text;
  if (job.format == "csv") {
    if (report.csv.empty() && report.exit_code == 0)
      throw Error(Errc::Usage, job.command + " has no tabular output");
    text = report.csv.empty() ? report.doc.dump(2) + "\n" : report.csv;
  } else {
    text = report.doc.dump(2) + "\n";
  }
  if (job.out.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(job.out, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + job.out);
  out << text;
  if (!out) throw Error(Errc::IoError, "write failed for " + job.out);
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  JobSpec job;
  CLI::App app{"zetalab: zeta functions, heights and scissor relations"};
  build_app(app, job);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "Usage: " << e.what() << "\n" << app.help();
    return 2;
  }
  finish_parse(app, job);
  const Report rep = run_job(job);
  try {
    emit(rep, job, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  for (const auto& f : rep.doc["failures"]) err << f.dump() << "\n";
  return rep.exit_code;
}

}  // namespace zetalab::cli
