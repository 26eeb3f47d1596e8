#pragma once

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cuspann/classfield.hpp"
#include "cuspann/cyclotomic.hpp"
#include "cuspann/lfunction.hpp"
#include "cuspann/workers.hpp"

namespace cuspann {

namespace detail {
inline long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
}  // namespace detail

// T_p: coefficient of q^i becomes that of q^{ip}.
template <class R>
FracSeries<R> tp_apply(const FracSeries<R>& f, std::uint32_t p) {
  if (f.den() != 1) throw DomainError("hecke", "T_p needs integral exponents (denominator " + std::to_string(f.den()) + ")");
  const long P = static_cast<long>(p);
  const long T = f.exact() ? FracSeries<R>::kExact : detail::floor_div(f.prec(), P);
  if (f.is_zero()) return FracSeries<R>(f.zero(), 1, T);
  const long lo = f.valuation();
  const long start = -detail::floor_div(-lo, P);
  const long hi = f.exact() ? detail::floor_div(lo + f.length() - 1, P) + 1 : T;
  std::vector<R> c;
  for (long i = start; i < hi; ++i) c.push_back(f.coeff(i * P));
  return FracSeries<R>(std::move(c), start, 1, T, f.zero());
}

// (Z/p^m)^x, cyclic, with discrete logs to the smallest generator.
struct UnitGroup {
  std::uint64_t p = 0, m = 0, pm = 0, order = 0, gen = 0;
  std::vector<long> logs;

  static UnitGroup make(std::uint64_t p, unsigned m) {
    UnitGroup G;
    G.p = p;
    G.m = m;
    G.pm = ipow(p, m);
    G.order = G.pm / p * (p - 1);
    G.gen = primitive_root_prime_power(p, m);
    G.logs.assign(G.pm, -1);
    std::uint64_t x = 1;
    for (std::uint64_t e = 0; e < G.order; ++e) {
      G.logs[x] = static_cast<long>(e);
      x = x * G.gen % G.pm;
    }
    return G;
  }
  long log(std::uint64_t u) const {
    long l = logs.at(u % pm);
    if (l < 0) throw DomainError("hecke", std::to_string(u) + " is not a unit mod " + std::to_string(pm));
    return l;
  }
  std::uint64_t inv(std::uint64_t u) const { return invmod(u % pm, pm); }
  // chi_b(u) = zeta_order^{b log u}
  CycInt chi(unsigned b, std::uint64_t u) const { return CycInt::zeta_pow(static_cast<int>(order), static_cast<long>(b) * log(u)); }
};

enum class RamifiedPolicy { Strict, CoprimePart };

inline std::string to_string(RamifiedPolicy r) { return r == RamifiedPolicy::Strict ? "strict" : "coprime-part"; }
inline RamifiedPolicy parse_policy(const std::string& s) {
  if (s == "strict") return RamifiedPolicy::Strict;
  if (s == "coprime-part") return RamifiedPolicy::CoprimePart;
  throw DomainError("hecke", "unknown ramified-term policy '" + s + "' (expected strict|coprime-part)");
}

struct AnnTerm {
  std::uint64_t u = 1;  // unit of (Z/p^m)^x
  long i = 0;           // Frobenius power
  std::uint64_t mult = 0;
};

struct AnnihilatorOp {
  GlobalParams params;
  long d = 0;
  long min_i = 0;  // terms exist for i >= min_i (min_i > 0 when truncated)
  std::vector<AnnTerm> terms;
  std::vector<std::uint64_t> dropped;  // per i, non-coprime r under the strict policy
  RamifiedPolicy policy = RamifiedPolicy::Strict;
  BetaConvention conv = BetaConvention::Class;

  bool truncated() const { return min_i > 0; }
  std::uint64_t total(long i) const {
    std::uint64_t s = 0;
    for (const auto& t : terms)
      if (t.i == i) s += t.mult;
    return s;
  }
  // total + dropped = (p^delta)^{d-1-i} for every built i
  bool check_multiplicities() const {
    for (long i = min_i; i < d; ++i) {
      Integer want;
      mpz_ui_pow_ui(want.get_mpz_t(), params.k_order, d - 1 - i);
      if (Integer(static_cast<unsigned long>(total(i) + dropped[i])) != want) return false;
    }
    return true;
  }
  std::size_t term_count() const { return terms.size(); }
};

// rho on a class representative; nullopt when not coprime.
using RhoUnitFn = std::function<std::optional<std::uint64_t>(const GFPoly&)>;

inline RhoUnitFn kummer_rho_fn(const KummerRho& rho) {
  const std::uint64_t p = rho.params().p, g = rho.generator();
  return [&rho, p, g](const GFPoly& x) -> std::optional<std::uint64_t> {
    try {
      return powmod(g, rho.log_eval(x), p);
    } catch (const RamifiedPlace&) {
      return std::nullopt;
    }
  };
}

// D_K = sum_i sum_{r monic, deg d-1-i} R_{rho(beta_r)} T_{p^{i delta}}, built
// by enumerating monic r. max_r_degree < d-1 truncates to the low-degree r.
inline AnnihilatorOp build_annihilator(const GlobalParams& params, const RayModulus& M, const RhoUnitFn& rho, BetaConvention conv = BetaConvention::Class,
                                       RamifiedPolicy policy = RamifiedPolicy::Strict, long max_r_degree = -1, unsigned workers = worker_count()) {
  const GF& k = params.k();
  const long d = M.degree();
  if (max_r_degree < 0) max_r_degree = d - 1;
  double size = std::pow(static_cast<double>(k.q()), static_cast<double>(std::min(max_r_degree, d - 1)));
  if (size > 2e7) throw ScaleError("hecke", "enumerating monic r of degree " + std::to_string(std::min(max_r_degree, d - 1)) + " over F_" + std::to_string(k.q()) + " exceeds desk scale");
  UnitGroup U = UnitGroup::make(params.p, params.m);
  AnnihilatorOp op;
  op.params = params;
  op.d = d;
  op.policy = policy;
  op.conv = conv;
  op.dropped.assign(d, 0);
  op.min_i = std::max(0L, d - 1 - max_r_degree);
  std::map<std::pair<long, std::uint64_t>, std::uint64_t> acc;
  for (long i = op.min_i; i < d; ++i) {
    long deg = d - 1 - i;
    std::uint64_t count = ipow(k.q(), static_cast<unsigned>(deg));
    using Part = std::pair<std::map<std::uint64_t, std::uint64_t>, std::uint64_t>;
    auto parts = parallel_ranges<Part>(count, workers, [&](std::uint64_t b, std::uint64_t e) {
      Part out;
      out.second = 0;
      for (std::uint64_t idx = b; idx < e; ++idx) {
        std::vector<GF::Code> c(deg + 1);
        std::uint64_t t = idx;
        for (long j = 0; j < deg; ++j) {
          c[j] = static_cast<GF::Code>(t % k.q());
          t /= k.q();
        }
        c[deg] = 1;
        GFPoly r = gf_poly_codes(k, c);
        auto u = rho(r);
        if (!u) {
          if (policy == RamifiedPolicy::Strict) {
            ++out.second;
            continue;
          }
          GFPoly rp = r;
          for (GFPoly g = poly_gcd(rp, M.q); g.degree() > 0; g = poly_gcd(rp, M.q)) rp = rp / g;
          u = rho(rp.monic());
          if (!u) throw DomainError("hecke", "coprime part still ramified");
        }
        std::uint64_t v = *u % U.pm;
        if (conv == BetaConvention::Inverse) v = U.inv(v);
        ++out.first[v];
      }
      return out;
    });
    for (const auto& [mp, dr] : parts) {
      op.dropped[i] += dr;
      for (const auto& [u, c] : mp) acc[{i, u}] += c;
    }
  }
  for (const auto& [key, c] : acc) op.terms.push_back({key.second, key.first, c});
  return op;
}

// c_i^{(chi_b)} = sum over terms at i of mult * chi_b(u), i = 0..d-1.
inline std::vector<CycInt> char_coeffs(const AnnihilatorOp& op, unsigned b) {
  UnitGroup U = UnitGroup::make(op.params.p, op.params.m);
  int n = static_cast<int>(U.order);
  std::vector<CycInt> c(op.d, CycInt(n, 0L));
  for (const auto& t : op.terms) c[t.i] += U.chi(b, t.u) * CycInt(n, Integer(static_cast<unsigned long>(t.mult)));
  return c;
}

// sum_i c_i X^{i delta}
inline CycPoly char_poly(const AnnihilatorOp& op, unsigned b) {
  auto c = char_coeffs(op, b);
  int n = c.empty() ? 1 : c[0].order();
  CycPoly P(CycInt(n, 0L));
  for (std::size_t i = 0; i < c.size(); ++i) P.set_coeff(i * op.params.delta, c[i]);
  return P;
}

inline CycInt char_scalar(const AnnihilatorOp& op, unsigned b, const CycInt& a) {
  auto c = char_coeffs(op, b);
  int N = std::lcm(a.order(), c.empty() ? 1 : c[0].order());
  CycInt x = a.embed(N), acc(N, 0L), pw(N, 1L);
  CycInt step = x.pow(op.params.delta);
  for (std::size_t i = 0; i < c.size(); ++i) {
    acc += c[i].embed(N) * pw;
    pw = pw * step;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Form records.

struct PrimeAbove {
  unsigned degree = 1;       // residue field F_{p^degree}
  GF::Code zeta_image = 0;   // image of zeta_N
};

struct FormRecord {
  std::string label;
  long weight = 2;
  std::uint32_t p = 5, m = 1;
  int order = 1;  // cyclotomic order N of the coefficient ring
  std::map<std::uint64_t, std::pair<int, long>> nebentypus;  // unit -> (order, exponent)
  std::vector<CycInt> coeffs;                                // a_1..a_M
  std::optional<CycInt> eigen_ap;
  bool normalized = true;
  std::optional<PrimeAbove> prime;

  long M() const { return static_cast<long>(coeffs.size()); }
  CycInt neb(std::uint64_t u) const {
    auto it = nebentypus.find(u);
    if (it == nebentypus.end()) throw DomainError("hecke", "nebentypus of " + label + " undefined at unit " + std::to_string(u));
    return CycInt::zeta_pow(it->second.first, it->second.second).embed(order);
  }
  // a_n with the eigen extension a_{np} = a_p a_n beyond the stored range.
  CycInt a(std::uint64_t n) const {
    if (n == 0) return CycInt(order, 0L);
    if (n <= coeffs.size()) return coeffs[n - 1];
    if (!eigen_ap || n % p != 0) throw PrecisionError("hecke", "coefficient a_" + std::to_string(n) + " of " + label + " not available");
    return *eigen_ap * a(n / p);
  }
};

inline nlohmann::json to_json(const FormRecord& f) {
  nlohmann::json j;
  j["label"] = f.label;
  j["weight"] = f.weight;
  j["p"] = f.p;
  j["m"] = f.m;
  j["level"] = "4*" + std::to_string(f.p) + "^" + std::to_string(f.m);
  j["cyclotomic_order"] = f.order;
  nlohmann::json neb = nlohmann::json::object();
  for (const auto& [u, v] : f.nebentypus) neb[std::to_string(u)] = {v.first, v.second};
  j["nebentypus"] = neb;
  auto rep = [](const CycInt& c) {
    std::vector<long> r;
    for (const auto& x : c.rep()) r.push_back(x.get_si());
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  };
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : f.coeffs) cs.push_back(rep(c));
  j["coeffs"] = cs;
  if (f.eigen_ap) j["eigen_ap"] = rep(*f.eigen_ap);
  j["normalized"] = f.normalized;
  if (f.prime) {
    const GF& F = GF::get(f.p, f.prime->degree);
    j["prime_above_p"] = {{"degree", f.prime->degree}, {"zeta_image", f.prime->zeta_image}, {"field_modulus", F.modulus()}};
  }
  return j;
}

inline FormRecord form_from_json(const nlohmann::json& j) {
  try {
    FormRecord f;
    f.label = j.at("label").get<std::string>();
    f.weight = j.at("weight").get<long>();
    if (f.weight != 2) throw DomainError("hecke", "form " + f.label + " has weight " + std::to_string(f.weight) + ", expected 2");
    f.p = j.at("p").get<std::uint32_t>();
    f.m = j.at("m").get<std::uint32_t>();
    f.order = j.value("cyclotomic_order", 1);
    for (const auto& [k, v] : j.at("nebentypus").items()) f.nebentypus[std::stoull(k)] = {v.at(0).get<int>(), v.at(1).get<long>()};
    auto rep = [&](const nlohmann::json& a) {
      std::vector<Integer> r;
      for (const auto& x : a) r.push_back(Integer(x.get<long>()));
      return CycInt(f.order, r);
    };
    for (const auto& a : j.at("coeffs")) f.coeffs.push_back(rep(a));
    if (j.contains("eigen_ap")) f.eigen_ap = rep(j.at("eigen_ap"));
    f.normalized = j.value("normalized", true);
    if (f.normalized && (f.coeffs.empty() || !(f.coeffs[0] == CycInt(f.order, 1L))))
      throw DomainError("hecke", "form " + f.label + " is flagged normalized but a_1 != 1");
    if (j.contains("prime_above_p")) {
      const auto& pa = j.at("prime_above_p");
      PrimeAbove P{pa.at("degree").get<unsigned>(), pa.at("zeta_image").get<GF::Code>()};
      const GF& F = GF::get(f.p, P.degree);
      if (pa.contains("field_modulus") && pa.at("field_modulus").get<std::vector<std::uint32_t>>() != F.modulus())
        throw DomainError("hecke", "form " + f.label + ": residue field modulus differs from this build's field");
      f.prime = P;
    }
    // nebentypus must be a character
    UnitGroup U = UnitGroup::make(f.p, f.m);
    for (std::uint64_t a = 1; a < U.pm; ++a) {
      if (U.logs[a] < 0) continue;
      for (std::uint64_t b = 1; b < U.pm; ++b) {
        if (U.logs[b] < 0) continue;
        if (!(f.neb(a) * f.neb(b) == f.neb(a * b % U.pm))) throw DomainError("hecke", "nebentypus of " + f.label + " is not a character");
      }
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("hecke", std::string("malformed form record: ") + e.what());
  }
}

inline std::vector<FormRecord> read_forms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("hecke", "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("hecke", "cannot parse " + path + ": " + e.what());
  }
  std::vector<FormRecord> out;
  const auto& arr = j.is_array() ? j : j.at("forms");
  for (const auto& x : arr) out.push_back(form_from_json(x));
  return out;
}

inline std::string write_forms(const std::vector<FormRecord>& forms) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : forms) arr.push_back(to_json(f));
  nlohmann::json j;
  j["forms"] = arr;
  return j.dump(1) + "\n";
}

// Reduction map Z[zeta_N] -> F_{p^s} of a record.
inline std::pair<const GF*, GF::Code> reduction_of(const FormRecord& f) {
  if (f.prime) return {&GF::get(f.p, f.prime->degree), f.prime->zeta_image};
  if ((f.p - 1) % f.order != 0) throw DomainError("hecke", "form " + f.label + " needs prime_above_p for its cyclotomic order");
  const GF& F = GF::get(f.p, 1);
  return {&F, F.pow(F.gen(), (f.p - 1) / f.order)};
}

struct VanishingReport {
  std::string label;
  long largest_exponent = 0;
  bool zero_mod_p = false;
  bool zero_exact = false;
  long first_nonzero_mod_p = -1;

  std::string str() const {
    std::string s = label + ": checked q^1..q^" + std::to_string(largest_exponent) + "; ";
    s += zero_mod_p ? "zero mod p up to q^" + std::to_string(largest_exponent) : "NONZERO mod p at q^" + std::to_string(first_nonzero_mod_p);
    s += zero_exact ? "; exactly zero" : "; not exactly zero";
    return s;
  }
};

struct AnnihilatorResult {
  std::vector<CycInt> coeffs;  // q^1..q^prec
  VanishingReport report;
};

// sum_terms mult eps(u) T_p^{i delta} f, coefficients q^1..q^prec.
inline AnnihilatorResult apply_annihilator(const AnnihilatorOp& op, const FormRecord& f, long prec) {
  if (f.p != op.params.p || f.m != op.params.m) throw DomainError("hecke", "form " + f.label + " has different (p, m) than the operator");
  const std::uint64_t p = op.params.p;
  const std::uint64_t top = ipow(p, static_cast<unsigned>((op.d - 1) * op.params.delta));
  if (!f.eigen_ap && static_cast<std::uint64_t>(f.M()) < static_cast<std::uint64_t>(prec) * top)
    throw PrecisionError("hecke", "form " + f.label + " needs M >= " + std::to_string(static_cast<std::uint64_t>(prec) * top) + " coefficients for T_{p^" +
                                      std::to_string((op.d - 1) * op.params.delta) + "} up to q^" + std::to_string(prec));
  // collapse terms to c_i = sum mult eps(u)
  std::vector<CycInt> c(op.d, CycInt(f.order, 0L));
  for (const auto& t : op.terms) c[t.i] += f.neb(t.u) * CycInt(f.order, Integer(static_cast<unsigned long>(t.mult)));
  AnnihilatorResult res;
  auto [F, z] = reduction_of(f);
  res.report.label = f.label;
  res.report.largest_exponent = prec;
  res.report.zero_mod_p = true;
  res.report.zero_exact = true;
  for (long j = 1; j <= prec; ++j) {
    CycInt s(f.order, 0L);
    std::uint64_t idx = static_cast<std::uint64_t>(j);
    for (long i = 0; i < op.d; ++i) {
      if (i >= op.min_i && !c[i].is_zero()) s += c[i] * f.a(idx);
      for (unsigned r = 0; r < op.params.delta; ++r) idx *= p;
    }
    if (!s.is_zero()) res.report.zero_exact = false;
    if (s.reduce(*F, z) != 0 && res.report.zero_mod_p) {
      res.report.zero_mod_p = false;
      res.report.first_nonzero_mod_p = j;
    }
    res.coeffs.push_back(std::move(s));
  }
  return res;
}

// Coefficient-wise sum of two records with equal nebentypus.
inline FormRecord add_forms(const FormRecord& a, const FormRecord& b, long M) {
  if (a.order != b.order || a.nebentypus != b.nebentypus) throw DomainError("hecke", "form sum needs equal nebentypus and coefficient ring");
  FormRecord s = a;
  s.label = a.label + "+" + b.label;
  s.eigen_ap.reset();
  s.normalized = false;
  s.coeffs.clear();
  for (long n = 1; n <= M; ++n) s.coeffs.push_back(a.a(n) + b.a(n));
  return s;
}

// ---------------------------------------------------------------------------
// Synthetic U_p-eigen fixtures: for each nontrivial chi and each nonzero root
// a of rev L_chi mod the prime above p, the record a_n = a^{v_p(n)} with
// nebentypus chi and coefficients in Z[zeta_N], N = p^s - 1.

inline std::vector<FormRecord> generate_fixtures(const KummerModel& Mdl, long M = 200, unsigned workers = worker_count()) {
  const GlobalParams& params = Mdl.params;
  if (params.m != 1 || params.delta != 1) throw DomainError("hecke", "fixtures are generated for m = 1 and delta = 1");
  const std::uint32_t p = params.p;
  const GF& Fp = GF::get(p, 1);
  KummerRho rho(params, Mdl.f);
  RhoCountTable T = rho_count_table(rho, Mdl.D + 1, workers);
  UnitGroup U = UnitGroup::make(p, 1);
  const unsigned n = p - 1;
  // reversed L mod p: zeta_n -> g
  std::vector<std::pair<unsigned, GFPoly>> revs;
  long s = 1;
  for (const auto& chi : all_characters(n)) {
    if (chi.trivial()) continue;
    LPoly L = dirichlet_L(rho, T, chi);
    long d = Mdl.D - 1;
    std::vector<GF::Code> rc(d + 1, 0);
    for (long j = 0; j <= d && j <= L.stab_degree; ++j) rc[d - j] = L.c[j].reduce(Fp, Fp.gen());
    GFPoly rev = gf_poly_codes(Fp, rc);
    GFPoly x = gf_x(Fp);
    while (!rev.is_zero() && rev.coeff(0).is_zero()) rev = rev / x;
    for (const auto& fac : factor(rev)) s = std::lcm(s, fac.f.degree());
    revs.push_back({chi.b, rev});
  }
  const GF& big = GF::get(p, static_cast<std::uint32_t>(s));
  const std::uint64_t N = big.q() - 1;
  // zeta_N -> gamma with gamma^{N/(p-1)} = g
  GF::Code gamma = 0;
  for (std::uint64_t kx = 1; kx < N; ++kx) {
    if (gcd_u64(kx, N) != 1) continue;
    GF::Code c = big.exp(kx);
    if (big.pow(c, N / n) == Fp.gen()) {
      gamma = c;
      break;
    }
  }
  if (!gamma) throw DomainError("hecke", "no compatible root of unity image");
  std::vector<FormRecord> out;
  for (const auto& [b, rev] : revs) {
    auto roots = roots_in(rev, big);
    int idx = 0;
    for (GF::Code r : roots) {
      if (r == 0) continue;
      // exponent e with gamma^e = r
      std::uint64_t e = 0;
      GF::Code x = 1;
      while (x != r) {
        x = big.mul(x, gamma);
        ++e;
      }
      FormRecord f;
      f.label = "Lchi" + std::to_string(b) + "-root" + std::to_string(idx++);
      f.p = p;
      f.m = 1;
      f.order = static_cast<int>(N);
      for (std::uint64_t u = 1; u < p; ++u) f.nebentypus[u] = {static_cast<int>(n), static_cast<long>((static_cast<std::uint64_t>(b) * U.log(u)) % n)};
      for (long k = 1; k <= M; ++k) {
        int v = valuation(Integer(k), p);
        f.coeffs.push_back(CycInt::zeta_pow(f.order, static_cast<long>(e) * v));
      }
      f.eigen_ap = CycInt::zeta_pow(f.order, static_cast<long>(e));
      f.prime = PrimeAbove{static_cast<unsigned>(s), gamma};
      out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace cuspann
