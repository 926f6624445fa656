#include "zetalab/varieties/counting.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <thread>

#include "modpoly.hpp"
#include "zetalab/cyclofield/cyclotomic.hpp"
#include "zetalab/cyclofield/zech.hpp"
#include "zetalab/error.hpp"

namespace zetalab {

using detail::ModPoly;
using detail::ZPoly;
using Code = ZechField::Code;

std::uint64_t default_budget() {
  if (const char* env = std::getenv("ZETALAB_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 100'000'000ULL;
}

namespace {

constexpr std::size_t kMaxBranches = 4096;
constexpr std::size_t kMaxSplitRoots = 16;
constexpr u64 kRootScanLimit = 1u << 20;

/// Affine system over F_p; `fixed` marks coordinates already substituted.
struct Piece {
  unsigned nvars = 0;
  std::vector<bool> fixed;
  std::vector<ModPoly> eqs, ineqs;
  ModPoly f;
};

struct Block {
  std::vector<unsigned> vars;
  std::vector<ModPoly> eqs, ineqs;
  ModPoly f;
};

struct Branch {
  std::vector<Block> blocks;
  unsigned free_vars = 0;
  u64 f_const = 0;
};

void push_unique(std::vector<ModPoly>& v, ModPoly g) {
  if (std::find(v.begin(), v.end(), g) == v.end()) v.push_back(std::move(g));
}

ModPoly coordinate(unsigned nvars, unsigned v) {
  ModPoly r;
  r.nvars = nvars;
  Exponents e(nvars, 0);
  e[v] = 1;
  r.terms.emplace(e, 1);
  return r;
}

/// Roots in F_p of a nonzero polynomial whose radical splits over F_p.
std::optional<std::vector<u64>> split_roots(const FpPoly& u) {
  const u64 p = u.prime();
  if (p > kRootScanLimit) return std::nullopt;
  FpPoly r = radical(u);
  std::vector<u64> roots;
  for (u64 x = 0; x < p; ++x)
    if (r.eval(x) == 0) roots.push_back(x);
  if (static_cast<int>(roots.size()) != r.degree()) return std::nullopt;
  return roots;
}

std::vector<u64> fp_roots(const FpPoly& u) {
  std::vector<u64> roots;
  for (u64 x = 0; x < u.prime(); ++x)
    if (u.eval(x) == 0) roots.push_back(x);
  return roots;
}

void simplify(const Piece& in, u64 p, std::vector<Branch>& out) {
  if (out.size() > kMaxBranches) throw Error(Errc::BudgetExceeded, "too many case splits");
  Piece pc;
  pc.nvars = in.nvars;
  pc.fixed = in.fixed;
  pc.f = in.f;
  for (const auto& g : in.eqs) {
    if (g.is_zero()) continue;
    if (g.is_constant()) return;
    push_unique(pc.eqs, g);
  }
  for (const auto& h : in.ineqs) {
    if (h.is_zero()) return;
    if (h.is_constant()) continue;
    if (h.is_monomial()) {
      for (unsigned v : h.variables()) push_unique(pc.ineqs, coordinate(pc.nvars, v));
    } else {
      push_unique(pc.ineqs, h);
    }
  }

  auto mentions = [&](unsigned v, const ModPoly* skip) {
    for (const auto& g : pc.eqs)
      if (&g != skip && g.degree_in(v) > 0) return true;
    for (const auto& h : pc.ineqs)
      if (h.degree_in(v) > 0) return true;
    return pc.f.degree_in(v) > 0;
  };
  for (const auto& g : pc.eqs) {
    const auto vars = g.variables();
    if (vars.size() != 1 || !mentions(vars[0], &g)) continue;
    const unsigned v = vars[0];
    auto roots = split_roots(g.univariate(v, p));
    if (!roots || roots->size() > kMaxSplitRoots) continue;
    for (u64 r : *roots) {
      Piece sub;
      sub.nvars = pc.nvars;
      sub.fixed = pc.fixed;
      sub.fixed[v] = true;
      for (const auto& e : pc.eqs) sub.eqs.push_back(e.substitute(v, r, p));
      for (const auto& h : pc.ineqs) sub.ineqs.push_back(h.substitute(v, r, p));
      sub.f = pc.f.substitute(v, r, p);
      simplify(sub, p, out);
    }
    return;
  }

  // Block decomposition.
  std::vector<unsigned> parent(pc.nvars);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](unsigned v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<bool> used(pc.nvars, false);
  auto link = [&](const std::vector<unsigned>& vars) {
    for (unsigned v : vars) used[v] = true;
    for (std::size_t i = 1; i < vars.size(); ++i) parent[find(vars[i])] = find(vars[0]);
  };
  for (const auto& g : pc.eqs) link(g.variables());
  for (const auto& h : pc.ineqs) link(h.variables());
  Branch b;
  b.f_const = pc.f.constant_term();
  const ModPoly fnc = pc.f.without_constant();
  for (const auto& [e, c] : fnc.terms) {
    std::vector<unsigned> vars;
    for (unsigned i = 0; i < pc.nvars; ++i)
      if (e[i]) vars.push_back(i);
    link(vars);
  }
  std::vector<int> block_of(pc.nvars, -1);
  for (unsigned v = 0; v < pc.nvars; ++v) {
    if (!used[v]) {
      if (!pc.fixed[v]) ++b.free_vars;
      continue;
    }
    const unsigned r = find(v);
    if (block_of[r] < 0) {
      block_of[r] = static_cast<int>(b.blocks.size());
      Block blk;
      blk.f.nvars = pc.nvars;
      b.blocks.push_back(std::move(blk));
    }
    b.blocks[block_of[r]].vars.push_back(v);
  }
  for (const auto& g : pc.eqs) b.blocks[block_of[find(g.variables()[0])]].eqs.push_back(g);
  for (const auto& h : pc.ineqs) b.blocks[block_of[find(h.variables()[0])]].ineqs.push_back(h);
  for (const auto& [e, c] : fnc.terms) {
    unsigned v = 0;
    while (!e[v]) ++v;
    b.blocks[block_of[find(v)]].f.terms.emplace(e, c);
  }
  out.push_back(std::move(b));
}

std::vector<Branch> plan(const VarietySpec& x, u64 p, bool twisted) {
  x.validate();
  std::vector<Branch> out;
  const unsigned n = x.nvars();
  auto base_piece = [&]() {
    Piece pc;
    pc.nvars = n;
    pc.fixed.assign(n, false);
    for (const auto& g : x.equations) pc.eqs.push_back(ModPoly::reduce(g, p));
    for (const auto& h : x.inequations) pc.ineqs.push_back(ModPoly::reduce(h, p));
    pc.f = twisted ? ModPoly::reduce(x.f, p) : ModPoly::constant(n, 0);
    return pc;
  };
  if (!x.projective()) {
    simplify(base_piece(), p, out);
    return out;
  }
  // Charts: first nonzero coordinate equal to 1.
  for (unsigned j = 0; j < n; ++j) {
    Piece pc = base_piece();
    for (unsigned i = 0; i <= j; ++i) {
      const u64 val = i == j ? 1 : 0;
      pc.fixed[i] = true;
      for (auto& g : pc.eqs) g = g.substitute(i, val, p);
      for (auto& h : pc.ineqs) h = h.substitute(i, val, p);
    }
    simplify(pc, p, out);
  }
  return out;
}

struct LevelCtx {
  u64 p = 0;
  unsigned k = 0, m = 0, K = 0;
  Integer Q;
  FiniteField fq;
  FFElem c;
  bool twisted = false;
  u64 tc = 0;  // Tr_{F_q/F_p}(c)
  CountOptions opts;
  std::shared_ptr<const ZechField> z;
  Code cz = 0;

  const ZechField& zech() {
    if (!z) {
      z = ZechField::get(p, K);
      cz = twisted ? z->from_elem(FieldEmbedding(fq, z->field()).apply(c)) : 0;
    }
    return *z;
  }
  /// Tr_{F_{q^m}/F_p}(c r) for r in F_p.
  u64 const_value(u64 r) const { return mulmod(mulmod(r % p, m % p, p), tc, p); }
};

Histogram zero_hist(u64 p) { return Histogram(p, Integer(0)); }

Histogram convolve(const Histogram& a, const Histogram& b) {
  const std::size_t p = a.size();
  Histogram r(p, Integer(0));
  for (std::size_t i = 0; i < p; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < p; ++j) {
      if (b[j] == 0) continue;
      r[(i + j) % p] += a[i] * b[j];
    }
  }
  return r;
}

int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Closed form for one coordinate y: equations force finitely many roots,
/// otherwise the whole line (f of degree <= 2) minus inequation roots.
std::optional<Histogram> single_variable(const Block& blk, LevelCtx& L) {
  const u64 p = L.p;
  const unsigned v = blk.vars[0];
  FpPoly G;
  bool have_eq = false;
  for (const auto& g : blk.eqs) {
    FpPoly u = g.univariate(v, p);
    G = have_eq ? gcd(G, u) : u.monic();
    have_eq = true;
  }
  FpPoly H = FpPoly::constant(p, 1);
  for (const auto& h : blk.ineqs) H = H * h.univariate(v, p);
  const FpPoly F = blk.f.univariate(v, p);
  const int fdeg = F.degree();
  Histogram hist = zero_hist(p);

  auto root_values = [&](const FpPoly& R, int sign) -> bool {
    if (R.degree() <= 0) return true;
    for (const auto& [d, P] : distinct_degree_factors(R)) {
      if (L.K % d != 0) continue;
      if (fdeg <= 0) {
        hist[0] += sign * P.degree();
        continue;
      }
      if (d != 1 || p > kRootScanLimit) return false;
      for (u64 r : fp_roots(P)) hist[L.const_value(F.eval(r))] += sign;
    }
    return true;
  };

  if (have_eq) {
    FpPoly R = radical(G);
    if (H.degree() > 0) R = R / gcd(R, H);
    if (!root_values(R, 1)) return std::nullopt;
    return hist;
  }

  if (fdeg <= 0) {
    hist[0] = L.Q;
  } else if (fdeg == 1) {
    Integer share = L.Q / Integer(static_cast<unsigned long>(p));
    for (auto& h : hist) h = share;
  } else if (fdeg == 2) {
    const Integer share = L.Q / Integer(static_cast<unsigned long>(p));
    if (p == 2) {
      // Tr(c y^2) = Tr(sqrt(c) y): the form is linear in y.
      const FFElem sq = L.c.pow(L.fq.size() / 2);
      const FFElem kappa = sq + (F[1] ? L.c : L.fq.zero());
      if (kappa.is_zero()) {
        hist[0] = L.Q;
      } else {
        hist[0] = share;
        hist[1] = share;
      }
    } else {
      const u64 a = F[2], b = F[1];
      // a y^2 + b y = a (y + b/2a)^2 - b^2/4a
      const u64 shift = submod(0, mulmod(mulmod(b, b, p), invmod(mulmod(4 % p, a, p), p), p), p);
      const u64 e0 = L.const_value(shift);
      const FFElem mu = L.c * L.fq.from_int(static_cast<std::int64_t>(a));
      int eta = mu.pow((L.fq.size() - 1) / 2) == L.fq.one() ? 1 : -1;
      if (L.m % 2 == 0) eta = 1;
      const long pstar = (p % 4 == 1) ? static_cast<long>(p) : -static_cast<long>(p);
      const unsigned n = L.K;
      Histogram z = zero_hist(p);
      const Integer P(static_cast<unsigned long>(p));
      if (n % 2 == 0) {
        Integer gauss;
        mpz_pow_ui(gauss.get_mpz_t(), Integer(pstar).get_mpz_t(), n / 2);
        gauss = -gauss;
        z[0] = share + eta * gauss * (P - 1) / P;
        for (u64 e = 1; e < p; ++e) z[e] = share - eta * gauss / P;
      } else {
        Integer g2;
        mpz_pow_ui(g2.get_mpz_t(), Integer(pstar).get_mpz_t(), (n + 1) / 2);
        z[0] = share;
        for (u64 e = 1; e < p; ++e) z[e] = share + eta * legendre(p - e, p) * g2 / P;
      }
      for (u64 e = 0; e < p; ++e) hist[(e + e0) % p] = z[e];
    }
  } else {
    return std::nullopt;
  }
  if (H.degree() > 0 && !root_values(radical(H), -1)) return std::nullopt;
  return hist;
}

/// Diagonal conic alpha x^2 + beta y^2 = gamma with f = lambda x y, p odd.
/// The character sum is a Kloosterman sum plus a Gauss-sum term; the
/// Kloosterman sum over F_{q^m} comes from the one over F_q by the usual
/// two-root recursion.
std::optional<Histogram> diagonal_conic(const Block& blk, LevelCtx& L) {
  const u64 p = L.p;
  if (p == 2 || blk.vars.size() != 2 || blk.eqs.size() != 1 || !blk.ineqs.empty()) return std::nullopt;
  const unsigned vx = blk.vars[0], vy = blk.vars[1];
  const unsigned n = blk.eqs[0].nvars;
  auto mono = [&](unsigned ex, unsigned ey) {
    Exponents e(n, 0);
    e[vx] = ex;
    e[vy] = ey;
    return e;
  };
  u64 alpha = 0, beta = 0, gamma = 0, lambda = 0;
  for (const auto& [e, c] : blk.eqs[0].terms) {
    if (e == mono(2, 0)) alpha = c;
    else if (e == mono(0, 2)) beta = c;
    else if (e == mono(0, 0)) gamma = submod(0, c, p);
    else return std::nullopt;
  }
  for (const auto& [e, c] : blk.f.terms) {
    if (e != mono(1, 1)) return std::nullopt;
    lambda = c;
  }
  if (alpha == 0 || beta == 0) return std::nullopt;

  const FiniteField& fq = L.fq;
  const u64 q = fq.size();
  const unsigned m = L.m;
  auto eta_q = [&](const FFElem& z) { return z.is_zero() ? 0 : (z.pow((q - 1) / 2) == fq.one() ? 1 : -1); };
  auto eta_Q = [&](const FFElem& z) {
    const int s = eta_q(z);
    return (m % 2 == 0) ? s * s : s;
  };
  auto zeta = [&](u64 e) { return CyclotomicInt::root_of_unity(p, static_cast<std::int64_t>(e)); };
  const FFElem A = fq.from_int(static_cast<std::int64_t>(alpha));
  const FFElem B = fq.from_int(static_cast<std::int64_t>(beta));
  const FFElem C = fq.from_int(static_cast<std::int64_t>(gamma));
  const int e_ab = eta_Q(-(A * B));

  Histogram hist = zero_hist(p);
  const Integer& Q = L.Q;
  const Integer N = gamma ? Integer(Q - e_ab) : Integer(Q + e_ab * (Q - 1));
  const FFElem a = L.c * fq.from_int(static_cast<std::int64_t>(lambda));
  if (a.is_zero()) {
    hist[0] = N;
    return hist;
  }

  // Kloosterman part: eta(-alpha beta) K(a^2, gamma^2 / (16 alpha beta)).
  const FFElem s = a * a;
  const FFElem t = C * C * (fq.from_int(16) * A * B).inverse();
  CyclotomicInt kloost(p, Integer(-1));
  if (!t.is_zero()) {
    auto z = ZechField::get(p, L.k);
    const Code sz = z->from_elem(s), tz = z->from_elem(t);
    Histogram h1 = zero_hist(p);
    for (Code u = 1; u < z->size(); ++u) h1[z->trace(z->add(z->mul(sz, u), z->mul(tz, z->inv(u))))] += 1;
    const CyclotomicInt k1 = CyclotomicInt::from_histogram(p, h1);
    // omega_1 + omega_2 = -K_1, omega_1 omega_2 = q; K_m = -(omega_1^m + omega_2^m).
    CyclotomicInt prev(p, Integer(2)), cur = -k1;
    const Integer qi(static_cast<unsigned long>(q));
    for (unsigned j = 2; j <= m; ++j) {
      CyclotomicInt next = -(k1 * cur) - prev * qi;
      prev = std::move(cur);
      cur = std::move(next);
    }
    kloost = -cur;
  }
  CyclotomicInt V = kloost * Integer(e_ab);

  // Rank-one terms at w = +-a / (2 delta), delta^2 = alpha beta.
  const int ab_sq = eta_q(A * B);
  if (ab_sq == 1 || m % 2 == 0) {
    const unsigned s_deg = ab_sq == 1 ? 1 : 2;
    const FiniteField F = s_deg == 1 ? fq : build_field(p, L.k * 2);
    const FieldEmbedding emb(fq, F);
    const FFElem ab = emb.apply(A * B);
    FFElem delta;
    for (u64 i = 1; i < F.size(); ++i) {
      const FFElem d = F.from_index(i);
      if (d * d == ab) {
        delta = d;
        break;
      }
    }
    const FFElem w0 = emb.apply(a) * (F.from_int(2) * delta).inverse();
    const unsigned reps = m / s_deg;
    auto eta_Q2 = [&](const FFElem& z) {
      const int v = z.pow((F.size() - 1) / 2) == F.one() ? 1 : -1;
      return reps % 2 == 0 ? 1 : v;
    };
    auto psi_Q = [&](const FFElem& z) { return zeta(mulmod(reps % p, absolute_trace(z), p)); };
    CyclotomicInt gauss_p(p);
    for (u64 x = 0; x < p; ++x) gauss_p += zeta(mulmod(x, x, p));
    CyclotomicInt gauss = -((-gauss_p).pow(L.K));
    const FFElem g = emb.apply(C);
    CyclotomicInt inner = psi_Q(-(g * w0)) + psi_Q(g * w0) * Integer(eta_Q2(-F.one()));
    V += gauss * inner * Integer(eta_Q2(w0 * emb.apply(A)));
  }

  // Histogram from the value and the total count.
  const auto& v = V.coeffs();
  Integer rest = N;
  for (const auto& c : v) rest -= c;
  Integer shift;
  if (!divide_exact(rest, Integer(static_cast<unsigned long>(p)), shift))
    throw Error(Errc::NonIntegralCoefficient, "conic character sum is inconsistent with its point count");
  for (u64 e = 0; e < p; ++e) hist[e] = (e < v.size() ? v[e] : Integer(0)) + shift;
  return hist;
}

/// Enumeration over the table-backed field, solving for one coordinate.
class Enumerator {
 public:
  Enumerator(const Block& blk, LevelCtx& L) : blk_(blk), L_(L), z_(L.zech()) {
    choose_last();
    const ZechField& z = z_;
    auto split = [&](const ModPoly& g) {
      std::vector<ZPoly> out;
      for (const auto& c : g.coefficients_in(y_)) out.push_back(ZPoly::compile(c, z));
      return out;
    };
    for (const auto& g : blk_.eqs) eqs_.push_back(split(g));
    for (const auto& h : blk_.ineqs) ineqs_.push_back(split(h));
    f_ = split(blk_.f);
    const u64 Q = z.size();
    long double est = 1;
    for (std::size_t i = 0; i < lead_.size(); ++i) est *= static_cast<long double>(Q);
    if (score_ == 0) est *= static_cast<long double>(Q);
    if (est > static_cast<long double>(L.opts.budget))
      throw Error(Errc::BudgetExceeded, "about " + std::to_string(static_cast<double>(est)) +
                                            " candidate tuples over F_" + std::to_string(Q) + " (budget " +
                                            std::to_string(L.opts.budget) + ")");
  }

  Histogram run() {
    const u64 p = L_.p;
    const u64 Q = z_.size();
    unsigned threads = std::max(1u, L_.opts.threads);
    if (lead_.empty()) threads = 1;
    const u64 range = lead_.empty() ? 1 : Q;
    threads = static_cast<unsigned>(std::min<u64>(threads, range));
    std::vector<std::vector<std::int64_t>> parts(threads, std::vector<std::int64_t>(p, 0));
    std::vector<std::uint64_t> work(threads, 0);
    auto shard = [&](unsigned t) {
      const u64 lo = range * t / threads, hi = range * (t + 1) / threads;
      scan(lo, hi, parts[t], work[t]);
    };
    if (threads == 1) {
      shard(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(shard, t);
      for (auto& th : pool) th.join();
    }
    Histogram h = zero_hist(p);
    for (const auto& part : parts)
      for (u64 e = 0; e < p; ++e) h[e] += Integer(static_cast<long>(part[e]));
    return h;
  }

 private:
  void choose_last() {
    int best = -1;
    for (unsigned v : blk_.vars) {
      int s = 0;
      bool in_eq = false;
      for (const auto& g : blk_.eqs) {
        const int d = g.degree_in(v);
        if (d > 0) in_eq = true;
        if (d == 1) s = std::max(s, 3);
        if (d == 2) s = std::max(s, 2);
      }
      if (!in_eq) {
        bool ok = blk_.f.degree_in(v) <= 1;
        for (const auto& h : blk_.ineqs) ok = ok && h.degree_in(v) <= 1;
        if (ok) s = 1;
      }
      if (s >= best) {
        best = s;
        y_ = v;
      }
    }
    score_ = best;
    for (unsigned v : blk_.vars)
      if (v != y_) lead_.push_back(v);
  }

  using UPoly = std::vector<Code>;

  void eval_split(const std::vector<ZPoly>& g, const Code* x, UPoly& out) const {
    out.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i].eval(z_, x);
    while (!out.empty() && out.back() == 0) out.pop_back();
  }

  void scan(u64 lo, u64 hi, std::vector<std::int64_t>& hist, std::uint64_t& work) {
    const ZechField& z = z_;
    const u64 p = L_.p;
    const u64 Q = z.size();
    const std::int64_t share = static_cast<std::int64_t>(Q / p);
    std::vector<Code> x(blk_.f.nvars, 0);
    std::vector<UPoly> eq_u(eqs_.size()), in_u(ineqs_.size());
    UPoly f_u;
    std::vector<Code> cand;
    const Code two = z.from_int(2), four = z.from_int(4);

    auto emit = [&](Code y) {
      for (const auto& u : eq_u)
        if (detail::horner(z, u, y) != 0) return;
      for (const auto& u : in_u)
        if (detail::horner(z, u, y) == 0) return;
      const Code fv = detail::horner(z, f_u, y);
      ++hist[z.trace(z.mul(L_.cz, fv))];
    };
    auto enumerate_y = [&]() {
      work += Q;
      if (work > L_.opts.budget) throw Error(Errc::BudgetExceeded, "enumeration exceeded the budget");
      for (u64 y = 0; y < Q; ++y) emit(static_cast<Code>(y));
    };

    if (lo >= hi) return;
    if (!lead_.empty()) x[lead_[0]] = static_cast<Code>(lo);
    u64 first = lo;
    while (true) {
      ++work;
      for (std::size_t i = 0; i < eqs_.size(); ++i) eval_split(eqs_[i], x.data(), eq_u[i]);
      for (std::size_t i = 0; i < ineqs_.size(); ++i) eval_split(ineqs_[i], x.data(), in_u[i]);
      eval_split(f_, x.data(), f_u);

      int pick = -1;
      for (std::size_t i = 0; i < eq_u.size(); ++i)
        if (!eq_u[i].empty() && (pick < 0 || eq_u[i].size() < eq_u[pick].size())) pick = static_cast<int>(i);
      if (pick >= 0) {
        const UPoly& u = eq_u[pick];
        const std::size_t deg = u.size() - 1;
        if (deg == 0) {
          // no solutions
        } else if (deg == 1) {
          emit(z.neg(z.mul(u[0], z.inv(u[1]))));
        } else if (deg == 2 && p != 2) {
          const Code disc = z.sub(z.mul(u[1], u[1]), z.mul(four, z.mul(u[2], u[0])));
          Code s[2];
          const int ns = z.sqrt(disc, s);
          const Code inv2a = z.inv(z.mul(two, u[2]));
          cand.clear();
          for (int i = 0; i < ns; ++i) {
            Code r = z.mul(z.sub(s[i], u[1]), inv2a);
            if (std::find(cand.begin(), cand.end(), r) == cand.end()) cand.push_back(r);
          }
          for (Code r : cand) emit(r);
        } else if (deg == 2 && u[1] == 0) {
          Code s[2];
          z.sqrt(z.mul(u[0], z.inv(u[2])), s);
          emit(s[0]);
        } else {
          enumerate_y();
        }
      } else {
        bool linear = f_u.size() <= 2;
        for (const auto& u : in_u) linear = linear && u.size() <= 2;
        if (!linear) {
          enumerate_y();
        } else {
          bool dead = false;
          cand.clear();
          for (const auto& u : in_u) {
            if (u.empty()) {
              dead = true;
              break;
            }
            if (u.size() == 2) {
              Code r = z.neg(z.mul(u[0], z.inv(u[1])));
              if (std::find(cand.begin(), cand.end(), r) == cand.end()) cand.push_back(r);
            }
          }
          if (!dead) {
            const Code alpha = f_u.size() > 1 ? f_u[1] : 0;
            const Code beta = f_u.empty() ? 0 : f_u[0];
            if (z.mul(L_.cz, alpha) != 0) {
              for (auto& h : hist) h += share;
            } else {
              hist[z.trace(z.mul(L_.cz, beta))] += static_cast<std::int64_t>(Q);
            }
            for (Code r : cand) --hist[z.trace(z.mul(L_.cz, z.add(z.mul(alpha, r), beta)))];
          }
        }
      }
      if (work > L_.opts.budget) throw Error(Errc::BudgetExceeded, "enumeration exceeded the budget");

      // Odometer: the last leading coordinate moves fastest.
      if (lead_.empty()) break;
      bool carry = true;
      for (std::size_t i = lead_.size() - 1; i > 0; --i) {
        if (++x[lead_[i]] < Q) {
          carry = false;
          break;
        }
        x[lead_[i]] = 0;
      }
      if (carry) {
        if (++first >= hi) break;
        x[lead_[0]] = static_cast<Code>(first);
      }
    }
  }

  const Block& blk_;
  LevelCtx& L_;
  const ZechField& z_;
  unsigned y_ = 0;
  int score_ = 0;
  std::vector<unsigned> lead_;
  std::vector<std::vector<ZPoly>> eqs_, ineqs_;
  std::vector<ZPoly> f_;
};

Histogram block_histogram(const Block& blk, LevelCtx& L) {
  if (blk.vars.size() == 1)
    if (auto h = single_variable(blk, L)) return *h;
  if (auto h = diagonal_conic(blk, L)) return *h;
  Enumerator en(blk, L);
  return en.run();
}

LevelCtx make_ctx(const FiniteField& fq, const FFElem& c, unsigned m, const CountOptions& opts) {
  if (m == 0) throw Error(Errc::DegreeZero, "extension degree m must be positive");
  if (!(c.field() == fq)) throw Error(Errc::FieldMismatch, "twist is not in the base field");
  LevelCtx L;
  L.p = fq.p();
  L.k = fq.k();
  L.m = m;
  L.K = fq.k() * m;
  mpz_ui_pow_ui(L.Q.get_mpz_t(), fq.size(), m);
  L.fq = fq;
  L.c = c;
  L.twisted = !c.is_zero();
  L.tc = absolute_trace(c);
  L.opts = opts;
  return L;
}

Histogram evaluate(const std::vector<Branch>& branches, LevelCtx& L) {
  const u64 p = L.p;
  Histogram total = zero_hist(p);
  for (const auto& b : branches) {
    Histogram h = zero_hist(p);
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), L.Q.get_mpz_t(), b.free_vars);
    h[L.const_value(b.f_const)] = scale;
    for (const auto& blk : b.blocks) {
      h = convolve(h, block_histogram(blk, L));
      if (std::all_of(h.begin(), h.end(), [](const Integer& v) { return v == 0; })) break;
    }
    for (u64 e = 0; e < p; ++e) total[e] += h[e];
  }
  return total;
}

}  // namespace

Histogram level_histogram(const VarietySpec& x, const FiniteField& fq, const FFElem& c, unsigned m,
                          const CountOptions& opts) {
  LevelCtx L = make_ctx(fq, c, m, opts);
  return evaluate(plan(x, fq.p(), L.twisted), L);
}

std::vector<Histogram> level_histograms(const VarietySpec& x, const FiniteField& fq, const FFElem& c, unsigned T,
                                        const CountOptions& opts) {
  const auto branches = plan(x, fq.p(), !c.is_zero());
  // Top level first: a field or budget failure surfaces before the cheap levels run.
  std::vector<Histogram> out(T);
  for (unsigned m = T; m >= 1; --m) {
    LevelCtx L = make_ctx(fq, c, m, opts);
    out[m - 1] = evaluate(branches, L);
  }
  return out;
}

Integer point_count(const VarietySpec& x, const FiniteField& fq, unsigned m, const CountOptions& opts) {
  Histogram h = level_histogram(x, fq, fq.zero(), m, opts);
  return std::accumulate(h.begin(), h.end(), Integer(0));
}

}  // namespace zetalab
