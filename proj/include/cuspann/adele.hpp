#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cuspann/curve_oracle.hpp"
#include "cuspann/dual.hpp"
#include "cuspann/hecke.hpp"
#include "cuspann/legendre.hpp"
#include "cuspann/ntt.hpp"

namespace cuspann {

// ---------------------------------------------------------------------------
// Residues of t^{-r} dlog H.

// Relation between the series residue and the kernel-ideal power sum.
enum class ResidueSign { Minus, Plus };

inline std::string to_string(ResidueSign s) { return s == ResidueSign::Minus ? "-1" : "+1"; }
inline ResidueSign parse_residue_sign(const std::string& s) {
  if (s == "-1" || s == "minus") return ResidueSign::Minus;
  if (s == "+1" || s == "1" || s == "plus") return ResidueSign::Plus;
  throw DomainError("adele-residue", "unknown residue sign '" + s + "' (expected -1|+1)");
}

// Coefficient of t^{-1} in g * H'/H.
template <class R>
R weighted_dlog_residue(const FracSeries<R>& g, const FracSeries<R>& H) {
  if (H.is_zero()) throw DomainError("adele-residue", "dlog of the zero series");
  if (H.den() != 1 || g.den() != 1) throw DomainError("adele-residue", "residues need integral exponents");
  const long v0 = H.valuation();
  FracSeries<R> U = H.shift(-v0);
  if (!ring_is_unit(U.lead())) throw DomainError("adele-residue", "leading coefficient of H is not a unit");
  // terms of U'/U needed: up to t^{-1 - val(g)}
  const long need = std::max(0L, -g.valuation());
  if (!U.exact() && U.prec() < need + 1)
    throw PrecisionError("adele-residue", "dlog residue needs H through t^" + std::to_string(v0 + need) + " (" + std::to_string(need + 1) + " terms past the order)");
  FracSeries<R> dl = U.derivative() * U.inverse(need + 1);
  dl = dl + FracSeries<R>::monomial(int_like(U.lead(), v0), -1);
  FracSeries<R> prod = g * dl;
  if (!prod.exact() && prod.prec() <= -1) throw PrecisionError("adele-residue", "residue coefficient not determined");
  return prod.coeff(-1);
}

// Coefficient of t^{-1} in t^{-r} (dH/dt)/H.
template <class R>
R dlog_residue(const FracSeries<R>& H, long r) {
  if (r < 1) throw DomainError("adele-residue", "r must be positive");
  return weighted_dlog_residue(FracSeries<R>::monomial(one_like(H.zero()), -r), H);
}

// sum_i alpha_i^{-r} over the roots of u, by Newton's identities on the
// reversed polynomial (whose roots are the alpha_i^{-1}).
template <class R>
R kernel_oracle(const Poly<R>& u, long r) {
  if (r < 1) throw DomainError("adele-residue", "r must be positive");
  if (u.is_zero() || !ring_is_unit(u.coeff(0))) throw DomainError("adele-residue", "kernel oracle needs a unit constant term");
  if (u.degree() > 2 * r) throw DomainError("adele-residue", "kernel oracle expects deg u <= 2r");
  const long n = u.degree();
  R inv0 = ring_inverse(u.coeff(0));
  // elementary symmetric functions of the alpha_i^{-1}
  std::vector<R> e(r + 1, u.zero());
  e[0] = one_like(u.zero());
  for (long k = 1; k <= std::min(n, r); ++k) {
    R c = u.coeff(k) * inv0;
    e[k] = (k % 2) ? -c : c;
  }
  std::vector<R> ps(r + 1, u.zero());
  for (long k = 1; k <= r; ++k) {
    R s = int_like(u.zero(), k) * e[k];
    if (k % 2 == 0) s = -s;
    for (long i = 1; i < k; ++i) {
      R t = e[i] * ps[k - i];
      s = (i % 2) ? s + t : s - t;
    }
    ps[k] = s;
  }
  return ps[r];
}

template <class R>
bool oracle_agrees(const Poly<R>& u, long r, ResidueSign sign = ResidueSign::Minus) {
  FracSeries<R> H(u.coeffs(), 0, 1, FracSeries<R>::kExact, u.zero());
  R a = dlog_residue(H, r), b = kernel_oracle(u, r);
  return sign == ResidueSign::Minus ? a == -b : a == b;
}

// Sum over all places of k(t) (finite ones through their roots in a splitting
// field, plus infinity) of Res(t^{-r} dlog(num/den)). Vanishes identically.
inline GFElem residue_sum(const GFPoly& num, const GFPoly& den, long r) {
  const GF& k = *num.zero().F;
  if (num.is_zero() || den.is_zero()) throw DomainError("adele-residue", "rational function must be nonzero");
  GFPoly all = num * den * gf_x(k);
  long L = 1;
  for (const auto& f : factor(all)) L = std::lcm(L, f.f.degree());
  const GF& E = GF::get(k.p(), k.n() * static_cast<std::uint32_t>(L));
  Embedding emb(k, E);
  GFPoly nE = embed_poly(num, emb), dE = embed_poly(den, emb);
  const GFElem zero(E, 0), one(E, 1);
  const long terms = r + 4;
  auto local = [&](const GFPoly& p) { return FracSeries<GFElem>(p.coeffs(), 0, 1, FracSeries<GFElem>::kExact, zero); };
  GFElem total = zero;
  for (GF::Code a : roots_in(all, E)) {
    GFElem al(E, a);
    FracSeries<GFElem> H = local(nE.shift(al)) * local(dE.shift(al)).inverse(terms + 2 * static_cast<long>(all.degree()));
    FracSeries<GFElem> g;
    if (a == 0) g = FracSeries<GFElem>::monomial(one, -r);
    else g = local(GFPoly(std::vector<GFElem>{al, one}, zero)).inverse(terms).pow(r);
    total = total + weighted_dlog_residue(g, H);
  }
  // infinity: s = 1/t, H(1/s) = s^{deg den - deg num} rev(num)/rev(den), g = s^r
  GFPoly rn = nE.reversed(nE.degree()), rd = dE.reversed(dE.degree());
  FracSeries<GFElem> Hinf = (local(rn) * local(rd).inverse(terms)).shift(dE.degree() - nE.degree());
  total = total + weighted_dlog_residue(FracSeries<GFElem>::monomial(one, r), Hinf);
  auto back = emb.preimage(total.v);
  if (!back) throw DomainError("adele-residue", "residue sum left the base field");
  return GFElem(k, *back);
}

// ---------------------------------------------------------------------------
// Ideles over k[eps].

using DualSeries = DualNumber<FpSeries>;

// x -> x^q on a Laurent series over a field of characteristic p.
inline FpSeries frob_series(const FpSeries& f, std::uint64_t q) {
  if (f.is_zero()) return f;
  FpSeries g = f.map([q](const GFElem& c) { return c.pow(q); }, f.zero());
  return g.stretch(static_cast<long>(q));
}

struct DualIdele {
  std::map<std::string, DualSeries> entries;  // 1 at every other place

  static DualIdele at(const std::string& place, const FpSeries& re, const FpSeries& eps) {
    DualIdele D;
    D.set(place, DualSeries(re, eps));
    return D;
  }
  // 1 + eps * x at one place
  static DualIdele tangent(const std::string& place, const FpSeries& x) {
    return at(place, FpSeries::constant(one_like(x.zero())), x);
  }
  void set(const std::string& place, const DualSeries& v) {
    if (v.re.is_zero()) throw DomainError("adele-residue", "idele entry at " + place + " is not a unit");
    entries[place] = v;
  }
  friend DualIdele operator*(const DualIdele& a, const DualIdele& b) {
    DualIdele r = a;
    for (const auto& [pl, v] : b.entries) {
      auto it = r.entries.find(pl);
      if (it == r.entries.end()) r.entries[pl] = v;
      else it->second = it->second * v;
    }
    return r;
  }
};

enum class FrobDirection { Forward, Transpose };

// Forward: mu0 + mu1 eps^q (eps^q = 0). Transpose: mu0^q + mu1^q eps.
inline DualIdele idele_frobenius(const DualIdele& D, FrobDirection dir, std::uint64_t q) {
  if (q < 2) throw DomainError("adele-residue", "Frobenius needs q >= 2");
  DualIdele out;
  for (const auto& [pl, v] : D.entries) {
    if (dir == FrobDirection::Forward) out.entries[pl] = DualSeries(v.re, FpSeries(v.eps.zero(), v.eps.den()));
    else out.entries[pl] = DualSeries(frob_series(v.re, q), frob_series(v.eps, q));
  }
  return out;
}

struct TangentClass {
  std::map<std::string, FpSeries> tails;  // principal parts, nonzero only

  bool empty() const { return tails.empty(); }
  friend TangentClass operator+(const TangentClass& a, const TangentClass& b) {
    TangentClass r = a;
    for (const auto& [pl, t] : b.tails) {
      auto it = r.tails.find(pl);
      FpSeries s = it == r.tails.end() ? t : it->second + t;
      if (s.is_zero()) r.tails.erase(pl);
      else r.tails[pl] = s;
    }
    return r;
  }
  friend bool operator==(const TangentClass& a, const TangentClass& b) {
    if (a.tails.size() != b.tails.size()) return false;
    for (const auto& [pl, t] : a.tails) {
      auto it = b.tails.find(pl);
      if (it == b.tails.end() || !(it->second == t)) return false;
    }
    return true;
  }
};

// eps-part tails of a pure tangent idele modulo local integrality.
inline TangentClass tangent_class(const DualIdele& D) {
  TangentClass T;
  for (const auto& [pl, v] : D.entries) {
    if (!(v.re == FpSeries::constant(one_like(v.re.zero())))) throw DomainError("adele-residue", "tangent class needs real part 1 at " + pl);
    FpSeries t = v.eps.principal_part();
    if (!t.is_zero()) T.tails[pl] = t;
  }
  return T;
}

// ---------------------------------------------------------------------------
// Cuspidal principal parts.

struct DescriptorTerm {
  std::uint64_t twist = 1;  // u^{-1} in (Z/p^m)^x
  long i = 0;               // Frobenius power of the annihilator term
  long exponent = 1;        // m p^{i delta}
  std::uint64_t mult = 0;
};

struct PrincipalPartDescriptor {
  GlobalParams params;
  std::string base = "qbar";
  std::vector<DescriptorTerm> terms;

  std::uint64_t term_count() const {
    std::uint64_t s = 0;
    for (const auto& t : terms) s += t.mult;
    return s;
  }
  std::string str() const {
    std::string s;
    for (const auto& t : terms)
      s += std::to_string(t.mult) + " x " + base + "^-" + std::to_string(t.exponent) + " at cusp twisted by " + std::to_string(t.twist) + "\n";
    return s;
  }
};

// One term per annihilator term: twist u^{-1}, exponent m p^{i delta}.
inline PrincipalPartDescriptor principal_descriptor(const GlobalParams& params, const AnnihilatorOp& op) {
  PrincipalPartDescriptor P;
  P.params = params;
  const std::uint64_t pm = params.pm();
  for (const auto& t : op.terms) {
    long e = static_cast<long>(params.m);
    for (long j = 0; j < t.i * static_cast<long>(params.delta); ++j) {
      if (e > (1L << 56)) throw ScaleError("adele-residue", "principal-part exponent overflow");
      e *= params.p;
    }
    P.terms.push_back({invmod(t.u % pm, pm), t.i, e, t.mult});
  }
  return P;
}

// Move one unit of multiplicity of a random term to a different twist.
inline PrincipalPartDescriptor corrupt_descriptor(const PrincipalPartDescriptor& P, std::mt19937_64& rng) {
  if (P.terms.empty()) throw DomainError("adele-residue", "nothing to corrupt");
  PrincipalPartDescriptor Q = P;
  UnitGroup U = UnitGroup::make(P.params.p, P.params.m);
  std::size_t idx = rng() % Q.terms.size();
  DescriptorTerm t = Q.terms[idx];
  std::uint64_t nt;
  do {
    nt = U.inv(powmod(U.gen, rng() % U.order, U.pm));
  } while (nt == t.twist);
  if (--Q.terms[idx].mult == 0) Q.terms.erase(Q.terms.begin() + static_cast<long>(idx));
  t.twist = nt;
  t.mult = 1;
  Q.terms.push_back(t);
  return Q;
}

// Sparse tails per cusp: cusp v -> (e -> coefficient of w^{-e}).
using CuspTails = std::map<GF::Code, std::map<long, GF::Code>>;

inline CuspTails tails_from_series(const std::map<GF::Code, FpSeries>& s) {
  CuspTails T;
  for (const auto& [v, f] : s) {
    if (f.den() != 1) throw DomainError("adele-residue", "tails need integral exponents");
    for (long j = 0; j < f.length(); ++j) {
      GF::Code c = f.raw()[j].v;
      if (c) T[v][-(f.valuation() + j)] = c;
    }
  }
  return T;
}

// Local data at the cusps of y^n = f(sigma): the n rational places above
// sigma = infinity, y/sigma^{D/n} = v in mu_n, all with parameter w = 1/sigma.
struct CuspExpansions {
  KummerModel M;
  std::vector<HoloDiff> basis;
  long E = 0;                                  // largest pole order covered
  std::vector<GF::Code> ftilde;                // w^D f(1/w)
  std::vector<std::vector<GF::Code>> phi_pow;  // phi^b to w^E, phi = ftilde^{-1/n}
  std::vector<std::pair<long, GF::Code>> qbar_pp;  // principal part of qbar^{-m} in w
  std::vector<GF::Code> cusps;                 // v in F_p^x with v^n = 1

  const GF& Fp() const { return GF::get(M.params.p, 1); }
  long twist_exp() const { return M.D / M.n; }
};

namespace detail {

// a * (sparse b), truncated at len.
inline void mul_sparse(std::vector<GF::Code>& a, const std::vector<std::pair<long, GF::Code>>& b, const GF& F) {
  std::vector<GF::Code> r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (const auto& [e, c] : b) {
      std::size_t j = i + static_cast<std::size_t>(e);
      if (j >= a.size()) break;
      r[j] = F.add(r[j], F.mul(a[i], c));
    }
  }
  a.swap(r);
}

inline std::vector<GF::Code> trunc_mul(const std::vector<GF::Code>& a, const std::vector<GF::Code>& b, std::size_t len, std::uint32_t p) {
  auto r = convolve_mod(a, b, p);
  r.resize(len, 0);
  return r;
}

}  // namespace detail

// q-bar is q^{1/4}, the parameter of sigma's expansion at the cusp.
inline CuspExpansions cusp_expansions(const KummerModel& M, long E) {
  const GlobalParams& params = M.params;
  if (params.delta != 1) throw DomainError("adele-residue", "cusp expansions need k = F_p");
  if (M.D % M.n != 0) throw DomainError("adele-residue", "the cusps above sigma = infinity are ramified for this model");
  if (E < 1 || E > (1L << 26)) throw ScaleError("adele-residue", "pole order " + std::to_string(E) + " out of range");
  const GF& F = GF::get(params.p, 1);
  CuspExpansions X;
  X.M = M;
  X.basis = holo_diff_basis(M);
  X.E = E;
  for (long j = 0; j <= M.D; ++j) {
    GFElem c = M.f.coeff(M.D - j);
    if (!M.k().in_prime_field(c.v)) throw DomainError("adele-residue", "p_sigma is not defined over F_p");
    X.ftilde.push_back(c.v);
  }
  std::vector<std::pair<long, GF::Code>> sparse;
  for (long j = 0; j <= M.D; ++j)
    if (X.ftilde[j]) sparse.push_back({j, X.ftilde[j]});
  // phi = prod_k ftilde(w^{p^k}) = ftilde^{sum p^k} = ftilde^{-1/(p-1)}
  std::vector<GF::Code> phi(E + 1, 0);
  phi[0] = 1;
  for (long pk = 1; pk <= E; pk *= params.p) {
    std::vector<std::pair<long, GF::Code>> s;
    for (const auto& [e, c] : sparse) s.push_back({e * pk, c});
    detail::mul_sparse(phi, s, F);
    if (pk > E / static_cast<long>(params.p)) break;
  }
  X.phi_pow.push_back(std::vector<GF::Code>(E + 1, 0));
  X.phi_pow[0][0] = 1;
  for (long b = 1; b < M.n; ++b) X.phi_pow.push_back(detail::trunc_mul(X.phi_pow.back(), phi, E + 1, params.p));
  for (GF::Code v = 1; v < params.p; ++v)
    if (F.pow(v, M.n) == 1) X.cusps.push_back(v);
  // qbar as a series in w = 1/sigma, by fixed-point reversion
  const long mm = static_cast<long>(params.m);
  const long N = mm + 2;
  FpSeries s = sigma_q_mod(params.p, N + 8, M.map);  // exponents in units of qbar
  FpSeries w = s.inverse();                           // w = sum_{j >= 1} a_j qbar^j
  if (w.prec() <= N) throw PrecisionError("adele-residue", "sigma expansion too short for the cusp parameter");
  std::vector<GF::Code> a(N + 1, 0);
  for (long j = 1; j <= N; ++j) a[j] = w.coeff(j).v;
  if (!a[1]) throw DomainError("adele-residue", "1/sigma does not vanish to order one at the cusp");
  // z = qbar(w) mod w^{N+1}: z = (w - sum_{j>=2} a_j z^j)/a_1
  std::vector<GF::Code> z(N + 1, 0);
  GF::Code a1inv = F.inv(a[1]);
  for (long it = 0; it <= N; ++it) {
    std::vector<GF::Code> acc(N + 1, 0), zp = z;
    for (long j = 2; j <= N; ++j) {
      zp = detail::trunc_mul(zp, z, N + 1, params.p);
      for (long i = 0; i <= N; ++i) acc[i] = F.add(acc[i], F.mul(a[j], zp[i]));
    }
    std::vector<GF::Code> nz(N + 1, 0);
    nz[1] = 1;
    for (long i = 0; i <= N; ++i) nz[i] = F.mul(F.sub(nz[i], acc[i]), a1inv);
    z = nz;
  }
  // qbar^{-m} = w^{-m} (z/w)^{-m}
  std::vector<GFElem> zc;
  for (long i = 1; i <= N; ++i) zc.push_back(GFElem(F, z[i]));
  FpSeries Z(zc, 0, 1, N, GFElem(F, 0));
  FpSeries Zm = Z.inverse().pow(mm);
  for (long k = 1; k <= mm; ++k) {
    GF::Code c = Zm.coeff(mm - k).v;
    if (c) X.qbar_pp.push_back({k, c});
  }
  return X;
}

// Per-cusp w-tails of a descriptor: term (twist u^{-1}, exponent m p^j) puts
// mult * Frob^j(pp of qbar^{-m}) at the cusp v = u^{-1} mod p.
inline CuspTails descriptor_tails(const PrincipalPartDescriptor& P, const CuspExpansions& X) {
  const GF& F = X.Fp();
  CuspTails T;
  for (const auto& t : P.terms) {
    GF::Code v = static_cast<GF::Code>(t.twist % P.params.p);
    long pj = t.exponent / static_cast<long>(P.params.m);
    GF::Code mult = static_cast<GF::Code>(t.mult % P.params.p);
    if (!mult) continue;
    for (const auto& [k, c] : X.qbar_pp) {
      long e = k * pj;
      auto& slot = T[v][e];
      slot = F.add(slot, F.mul(mult, c));
    }
  }
  for (auto& [v, m] : T)
    for (auto it = m.begin(); it != m.end();) it = it->second ? std::next(it) : m.erase(it);
  return T;
}

// (sum_v Res_v(tail_v * omega_j))_j over the holomorphic basis
// omega_{a,b} = sigma^a dsigma / y^b; at cusp v,
// omega/dw = -v^{-b} w^{bD/n - a - 2} phi^b.
inline std::vector<GF::Code> pairing_defect(const CuspTails& T, const CuspExpansions& X) {
  const GF& F = X.Fp();
  const long t = X.twist_exp();
  std::vector<GF::Code> defect;
  for (const auto& h : X.basis) {
    GF::Code acc = 0;
    for (const auto& [v, tail] : T) {
      GF::Code vb = F.inv(F.pow(v, h.b));
      for (const auto& [e, c] : tail) {
        long idx = e - (h.b * t - h.a - 2) - 1;
        if (idx < 0) continue;
        if (idx > X.E) throw PrecisionError("adele-residue", "pole order " + std::to_string(e) + " exceeds the expansion length " + std::to_string(X.E));
        acc = F.sub(acc, F.mul(F.mul(vb, c), X.phi_pow[h.b][idx]));
      }
    }
    defect.push_back(acc);
  }
  return defect;
}

struct MLSolution {
  std::vector<GFPoly> P;  // element = sum_b P_b(sigma) y^b
  bool verified = false;
  std::string spanning_set() const { return "sigma^a y^b (a >= 0, 0 <= b < n)"; }
};

struct DualityResult {
  std::vector<GF::Code> defect;
  bool zero = false;
  std::optional<MLSolution> solution;
};

namespace detail {

// f^{-1/n} by Newton iteration s <- s + s (1 - f s^n)/n.
inline std::vector<GF::Code> inverse_nth_root(const std::vector<GF::Code>& f, long n, std::size_t len, std::uint32_t p) {
  const GF& F = GF::get(p, 1);
  if (f.empty() || f[0] != 1) throw DomainError("adele-residue", "root series needs constant term 1");
  GF::Code ninv = F.inv(F.from_int(n));
  std::vector<GF::Code> s{1};
  for (std::size_t cur = 1; cur < len;) {
    cur = std::min(len, 2 * cur);
    s.resize(cur, 0);
    std::vector<GF::Code> sn{1};
    for (long i = 0; i < n; ++i) sn = trunc_mul(sn, s, cur, p);
    std::vector<GF::Code> fc(f.begin(), f.begin() + static_cast<long>(std::min(cur, f.size())));
    std::vector<GF::Code> fs = trunc_mul(fc, sn, cur, p);
    std::vector<GF::Code> corr(cur, 0);
    for (std::size_t i = 0; i < cur; ++i) corr[i] = F.mul(F.sub(i == 0 ? 1 : 0, fs[i]), ninv);
    auto d = trunc_mul(s, corr, cur, p);
    for (std::size_t i = 0; i < cur; ++i) s[i] = F.add(s[i], d[i]);
  }
  s.resize(len, 0);
  return s;
}

}  // namespace detail

// Re-expand sum_b P_b(sigma) y^b at every cusp through an independent root
// series and compare principal parts with T.
inline bool verify_solution(const MLSolution& S, const CuspTails& T, const CuspExpansions& X) {
  const GF& F = X.Fp();
  const std::uint32_t p = X.M.params.p;
  const long n = X.M.n, t = X.twist_exp(), E = X.E;
  std::vector<GF::Code> s = detail::inverse_nth_root(X.ftilde, n, E + 1, p);
  // y^b = v^b w^{-bt} ftilde^{b/n} = v^b w^{-bt} ftilde s^{n-b}
  std::vector<std::vector<GF::Code>> rb(n);
  rb[0].assign(E + 1, 0);
  rb[0][0] = 1;
  std::vector<GF::Code> sp = rb[0];
  std::vector<std::vector<GF::Code>> spow(n + 1);
  spow[0] = sp;
  for (long i = 1; i <= n; ++i) spow[i] = detail::trunc_mul(spow[i - 1], s, E + 1, p);
  for (long b = 1; b < n; ++b) rb[b] = detail::trunc_mul(X.ftilde, spow[n - b], E + 1, p);
  // principal part, per b, of w^{-bt} P_b(1/w) rb[b]: coefficient of w^{-k}
  std::vector<std::vector<GF::Code>> pp(n, std::vector<GF::Code>(E + 1, 0));
  for (long b = 0; b < n; ++b) {
    const GFPoly& P = S.P[b];
    if (P.is_zero()) continue;
    long top = P.degree() + b * t;
    if (top > E) return false;
    std::vector<GF::Code> A(top + 1, 0);
    for (long a = 0; a <= P.degree(); ++a) A[a + b * t] = P.coeff(a).v;
    std::vector<GF::Code> rev(rb[b].begin(), rb[b].begin() + top + 1);
    std::reverse(rev.begin(), rev.end());
    auto c = convolve_mod(A, rev, p);  // c[x + top - y] = A[x] r[y]; w^{-(x-y)}
    for (long k = 1; k <= top; ++k) pp[b][k] = c[k + top];
  }
  for (GF::Code v : X.cusps) {
    std::map<long, GF::Code> got;
    for (long k = 1; k <= E; ++k) {
      GF::Code acc = 0;
      for (long b = 0; b < n; ++b) acc = F.add(acc, F.mul(F.pow(v, b), pp[b][k]));
      if (acc) got[k] = acc;
    }
    std::map<long, GF::Code> want;
    auto it = T.find(v);
    if (it != T.end())
      for (const auto& [e, c] : it->second)
        if (e > 0) want[e] = c;
    if (got != want) return false;
  }
  return true;
}

// Mittag-Leffler over the span of sigma^a y^b: split the tails into
// mu_n-isotypic parts S_b = (1/n) sum_v v^{-b} T_v, then P_b is read off
// from pp(S_b phi^b) when its gap coefficients w^{-1..-(bt-1)} vanish.
inline std::optional<MLSolution> mittag_leffler(const CuspTails& T, const CuspExpansions& X) {
  const GF& F = X.Fp();
  const long n = X.M.n, t = X.twist_exp(), E = X.E;
  GF::Code ninv = F.inv(F.from_int(n));
  MLSolution S;
  for (long b = 0; b < n; ++b) {
    std::map<long, GF::Code> Sb;
    for (const auto& [v, tail] : T) {
      GF::Code vb = F.mul(F.inv(F.pow(v, b)), ninv);
      for (const auto& [e, c] : tail)
        if (e > 0) Sb[e] = F.add(Sb[e], F.mul(vb, c));
    }
    long emax = 0;
    for (const auto& [e, c] : Sb)
      if (c) emax = std::max(emax, e);
    if (emax > E) throw PrecisionError("adele-residue", "pole order " + std::to_string(emax) + " exceeds the expansion length");
    std::vector<GF::Code> R(emax + 1, 0);
    for (const auto& [e, c] : Sb) {
      if (!c) continue;
      for (long k = 1; k <= e; ++k) R[k] = F.add(R[k], F.mul(c, X.phi_pow[b][e - k]));
    }
    for (long k = 1; k < b * t && k <= emax; ++k)
      if (R[k]) return std::nullopt;
    std::vector<GFElem> coeffs;
    for (long a = 0; a + b * t <= emax; ++a) coeffs.push_back(GFElem(F, (b == 0 && a == 0) ? 0 : R[a + b * t]));
    S.P.push_back(GFPoly(std::move(coeffs), GFElem(F, 0)));
  }
  S.verified = verify_solution(S, T, X);
  return S;
}

inline DualityResult duality_check_and_solve(const PrincipalPartDescriptor& P, const CuspExpansions& X, bool solve = true) {
  if (P.params.p != X.M.params.p) throw DomainError("adele-residue", "descriptor and curve have different p");
  if (P.params.m != 1) throw DomainError("adele-residue", "the duality check covers the m = 1 layer");
  CuspTails T = descriptor_tails(P, X);
  DualityResult R;
  R.defect = pairing_defect(T, X);
  R.zero = std::all_of(R.defect.begin(), R.defect.end(), [](GF::Code c) { return c == 0; });
  if (solve && R.zero) R.solution = mittag_leffler(T, X);
  return R;
}

inline long max_exponent(const PrincipalPartDescriptor& P) {
  long e = 0;
  for (const auto& t : P.terms) e = std::max(e, t.exponent);
  return e;
}

}  // namespace cuspann
