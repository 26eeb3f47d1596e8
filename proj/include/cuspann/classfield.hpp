#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "cuspann/eisenstein.hpp"
#include "cuspann/legendre.hpp"
#include "cuspann/monic.hpp"
#include "cuspann/ratfunc.hpp"

namespace cuspann {

// Whether the Frobenius at h maps to the class of h or of h^{-1}.
enum class BetaConvention { Class, Inverse };

inline std::string to_string(BetaConvention c) { return c == BetaConvention::Class ? "class" : "inverse"; }
inline BetaConvention parse_beta(const std::string& s) {
  if (s == "class") return BetaConvention::Class;
  if (s == "inverse") return BetaConvention::Inverse;
  throw DomainError("classfield", "unknown beta convention '" + s + "' (expected class|inverse)");
}

// Modulus q(sigma) * m_infinity; only the finite part is stored.
struct RayModulus {
  GFPoly q;

  static RayModulus make(const GFPoly& q) {
    if (q.degree() < 1) throw DomainError("classfield", "ray modulus must be nonconstant");
    if (!(q.lead() == GFElem(*q.zero().F, 1))) throw DomainError("classfield", "ray modulus must be monic");
    return {q};
  }
  const GF& k() const { return *q.zero().F; }
  long degree() const { return q.degree(); }
  bool coprime(const GFPoly& x) const { return !x.is_zero() && poly_gcd(x, q).degree() == 0; }
};

struct GClass {
  GFPoly rep;  // reduced modulo q, coprime to it
};

inline GClass make_class(const RayModulus& M, const GFPoly& x) {
  if (!M.coprime(x)) throw RamifiedPlace("classfield", "ramified place: " + x.str("s") + " is not coprime to " + M.q.str("s"));
  return {x % M.q};
}

// Frobenius class of the place h (for reducible h, the multiplicative extension).
inline GClass frobenius_class(const RayModulus& M, const GFPoly& h, BetaConvention conv = BetaConvention::Class) {
  GClass c = make_class(M, h);
  if (conv == BetaConvention::Inverse) c.rep = poly_invmod(c.rep, M.q);
  return c;
}

inline GClass class_mul(const RayModulus& M, const GClass& a, const GClass& b) { return {(a.rep * b.rep) % M.q}; }

// Kummer reciprocity map of the layer k(sigma, f^{1/n}), n = p - 1, f squarefree:
// x -> prod over factors pi of f of x^{(Q_pi - 1)/n} mod pi, read in F_p^x.
class KummerRho {
 public:
  struct Place {
    GFPoly pi;
    long deg = 0;
    Integer expo;              // (Q - 1)/n
    const GF* F = nullptr;     // residue field as GF(p, delta*deg)
    GF::Code alpha = 0;        // chosen root of pi in F
    std::vector<GF::Code> k_in_F;  // embedding of k codes
    unsigned scale = 0;        // log_g of gen(F)^{(Q-1)/n}
  };

  KummerRho(const GlobalParams& params, const GFPoly& f) : params_(params), f_(f) {
    if (!is_squarefree(f)) throw DomainError("classfield", "Kummer modulus must be squarefree");
    n_ = params.p - 1;
    const GF& Fp = GF::get(params.p, 1);
    g_ = Fp.gen();
    logg_.assign(params.p, 0);
    for (unsigned e = 0, x = 1; e < n_; ++e, x = x * g_ % params.p) logg_[x] = e;
    const GF& k = params.k();
    for (const auto& fac : factor(f)) {
      Place P;
      P.pi = fac.f;
      P.deg = fac.f.degree();
      Integer Q;
      mpz_ui_pow_ui(Q.get_mpz_t(), params.k_order, P.deg);
      P.expo = (Q - 1) / n_;
      P.F = &GF::get(params.p, params.delta * P.deg);
      Embedding e(k, *P.F);
      P.k_in_F.resize(k.q());
      for (GF::Code a = 0; a < k.q(); ++a) P.k_in_F[a] = e(a);
      GFPoly piF = embed_poly(fac.f, e);
      bool found = false;
      for (GF::Code a = 0; a < P.F->q() && !found; ++a)
        if (piF(GFElem(*P.F, a)).is_zero()) {
          P.alpha = a;
          found = true;
        }
      if (!found) throw DomainError("classfield", "no root of a modulus factor in its residue field");
      GF::Code z = P.F->exp((P.F->q() - 1) / n_);
      P.scale = logg_.at(z);
      places_.push_back(std::move(P));
    }
  }

  const GlobalParams& params() const { return params_; }
  const GFPoly& modulus() const { return f_; }
  unsigned n() const { return n_; }
  GF::Code generator() const { return g_; }
  const std::vector<Place>& places() const { return places_; }
  unsigned log_g(GF::Code u) const {
    if (u == 0 || u >= params_.p) throw DomainError("classfield", "not an element of F_p^x");
    return logg_[u];
  }

  // Direct powering in k[sigma]/pi; result in 1..p-1.
  GF::Code eval(const GFPoly& x) const {
    const GF& k = params_.k();
    GF::Code acc = 1;
    for (const auto& P : places_) {
      GFPoly r = x % P.pi;
      if (r.is_zero()) throw RamifiedPlace("classfield", "ramified place: argument not coprime to the Kummer modulus");
      GFPoly v = r.powmod(P.expo, P.pi);
      if (v.degree() != 0 || !k.in_prime_field(v.coeff(0).v)) throw DomainError("classfield", "power residue left mu_n");
      acc = static_cast<GF::Code>(static_cast<std::uint64_t>(acc) * v.coeff(0).v % params_.p);
    }
    return acc;
  }

  // log_g of eval(x) computed through the chosen roots and discrete logs.
  unsigned log_eval(const GFPoly& x) const {
    std::uint64_t s = 0;
    for (const auto& P : places_) {
      GF::Code v = 0;
      for (long i = x.degree(); i >= 0; --i) v = P.F->add(P.F->mul(v, P.alpha), P.k_in_F[x.coeff(i).v]);
      if (v == 0) throw RamifiedPlace("classfield", "ramified place: argument not coprime to the Kummer modulus");
      s += static_cast<std::uint64_t>(P.scale) * (P.F->log(v) % n_);
    }
    return static_cast<unsigned>(s % n_);
  }

 private:
  GlobalParams params_;
  GFPoly f_;
  unsigned n_ = 0;
  GF::Code g_ = 0;
  std::vector<unsigned> logg_;
  std::vector<Place> places_;
};

inline GF::Code power_residue_rho(const GlobalParams& params, const GFPoly& x, const LambdaMap& map = LambdaMap::literal()) {
  if (params.m != 1) throw DomainError("classfield", "power_residue_rho is the m = 1 layer");
  return KummerRho(params, p_sigma(params, map)).eval(x);
}

// ---------------------------------------------------------------------------
// Artin-Schreier reduction f = h/p_t^l + P(u/v).

struct ASReduction {
  long l = 1;
  GFPoly h;
  RatFunc u;
};

namespace detail {

// a^{1/p} in k[t]/P for squarefree P.
inline GFPoly pth_root_mod(const GFPoly& a, const GFPoly& P) {
  const GF& k = *P.zero().F;
  long L = 1;
  for (const auto& f : factor(P)) L = std::lcm(L, f.f.degree());
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), k.p(), k.n() * L - 1);
  GFPoly b = a.powmod(e, P);
  if (!((b.pow(k.p()) - a) % P).is_zero()) throw DomainError("classfield", "p-th root failed");
  return b;
}

inline std::vector<GFPoly> padic_digits(GFPoly a, const GFPoly& P, long count) {
  std::vector<GFPoly> d;
  for (long i = 0; i < count; ++i) {
    auto [qo, r] = GFPoly::divmod(a, P);
    d.push_back(r);
    a = qo;
  }
  if (!a.is_zero()) throw DomainError("classfield", "P-adic expansion overflow");
  return d;
}

inline GF::Code as_root_const(const GF& k, GF::Code c) {
  for (GF::Code x = 0; x < k.q(); ++x)
    if (k.sub(k.pow(x, k.p()), x) == c) return x;
  throw DomainError("classfield", "x^p - x = c has no root");
}

// Reduce the polar part sum_J c[J]/P^J by P-shifts (c[0] unused), adding
// the shifts to u. Orders prime to p are left for the caller.
inline void reduce_block(std::vector<GFPoly>& c, const GFPoly& P, RatFunc& u) {
  const GF& k = *P.zero().F;
  const long p = k.p();
  for (long J = static_cast<long>(c.size()) - 1; J >= 1; --J) {
    if (c[J].is_zero() || J % p != 0) continue;
    GFPoly b = pth_root_mod(c[J], P);
    // subtract P(b/P^{J/p}) = b^p/P^J - b/P^{J/p}
    auto d = padic_digits(b.pow(p), P, J + 1);
    for (long i = 0; i <= J; ++i)
      if (!d[i].is_zero()) {
        if (J - i >= 1) c[J - i] = c[J - i] - d[i];
        else throw DomainError("classfield", "unexpected integral term in P-shift");
      }
    c[J / p] = c[J / p] + b;
    u = u + RatFunc(b, P.pow(J / p));
  }
}

}  // namespace detail

// Reduce f modulo P(k(t)) to h/p_t^l, deg h <= deg p_t^l, with poles only at
// the zeros of p_t (squarefree).
inline ASReduction as_reduce(const RatFunc& f, const GFPoly& p_t) {
  const GF& k = f.field();
  const long p = k.p();
  if (p_t.degree() < 1 || !is_squarefree(p_t)) throw DomainError("classfield", "p_t must be squarefree and nonconstant");
  GFPoly pt = p_t.monic();
  RatFunc u = RatFunc::zero(k);

  // Split the denominator into the p_t block and the remaining irreducibles.
  GFPoly rest = f.den;
  long E0 = 0;
  for (GFPoly g = poly_gcd(rest, pt); g.degree() > 0; g = poly_gcd(rest, pt)) {
    rest = rest / g;
    ++E0;
  }
  struct Block {
    GFPoly P;
    long E;
  };
  std::vector<Block> blocks{{pt, E0}};
  if (rest.degree() > 0)
    for (const auto& fac : factor(rest)) blocks.push_back({fac.f, fac.mult});

  RatFunc rem = f;
  std::vector<std::vector<GFPoly>> polar;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& B = blocks[bi];
    std::vector<GFPoly> c(B.E + 1, GFPoly(GFElem(k, 0)));
    if (B.E > 0) {
      GFPoly PE = B.P.pow(B.E);
      GFPoly R = bi == 0 ? rest : rem.den / PE;
      GFPoly lift = bi == 0 ? PE / (rem.den / R) : GFPoly::constant(GFElem(k, 1));
      GFPoly A = (rem.num * lift * poly_invmod(R, PE)) % PE;
      auto d = detail::padic_digits(A, B.P, B.E);
      for (long j = 0; j < B.E; ++j) c[B.E - j] = d[j];
      rem = rem - RatFunc(A, PE);
    }
    polar.push_back(std::move(c));
  }
  if (rem.den.degree() != 0) throw DomainError("classfield", "partial fractions did not exhaust the denominator");
  GFPoly w = rem.num;  // polynomial part (place at infinity)

  for (std::size_t bi = 0; bi < blocks.size(); ++bi) detail::reduce_block(polar[bi], blocks[bi].P, u);
  for (std::size_t bi = 1; bi < blocks.size(); ++bi)
    for (std::size_t J = 1; J < polar[bi].size(); ++J)
      if (!polar[bi][J].is_zero())
        throw UnreducibleRamification("classfield", "unreducible ramification at " + blocks[bi].P.str("t") + " (pole order " + std::to_string(J) + ")");

  // Polynomial part: kill degrees divisible by p from the top.
  while (w.degree() > 0) {
    long e = w.degree();
    if (e % p != 0) throw UnreducibleRamification("classfield", "unreducible ramification at infinity (degree " + std::to_string(e) + ")");
    GFElem a = w.lead();
    GFElem b(k, k.pow(a.v, k.q() / p));
    GFPoly bt = GFPoly::monomial(b, e / p);
    w = w - (bt.pow(p) - bt);
    u = u + RatFunc::poly(bt);
  }
  GFElem c0 = w.coeff(0);
  if (!c0.is_zero() && k.trace(c0.v) == 0) {
    GFElem x(k, detail::as_root_const(k, c0.v));
    u = u + RatFunc::poly(GFPoly::constant(x));
    c0 = GFElem(k, 0);
  }

  ASReduction out;
  const auto& c = polar[0];
  long l = 0;
  for (long J = static_cast<long>(c.size()) - 1; J >= 1; --J)
    if (!c[J].is_zero()) {
      l = J;
      break;
    }
  out.l = std::max(l, 1L);
  GFPoly h(GFElem(k, 0));
  for (long J = 1; J < static_cast<long>(c.size()); ++J)
    if (!c[J].is_zero()) h = h + c[J] * pt.pow(out.l - J);
  if (!c0.is_zero()) h = h + c0 * pt.pow(out.l);
  out.h = h;
  out.u = u;
  return out;
}

// ---------------------------------------------------------------------------
// h(sigma) from theta^{p-2}(E_{p+1})/E_{p-1}^3 = h(sigma)/p(sigma)^l mod p.

struct ASGenerator {
  long l = 0;
  GFPoly h;              // over F_p
  long unknowns = 0;
  long equations = 0;
  long certificate = 0;  // equations beyond the unknown count, all satisfied
  long prec_u = 0;       // q^{1/4}-precision of the check
};

namespace detail {

// Row-reduce an augmented system over F_p; returns false if inconsistent.
inline bool solve_fp(std::vector<std::vector<GF::Code>> A, const GF& F, long ncols, std::vector<GF::Code>& x, long& rank) {
  long rows = static_cast<long>(A.size());
  std::vector<long> pivcol;
  long r = 0;
  for (long c = 0; c < ncols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i)
      if (A[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(A[r], A[piv]);
    GF::Code inv = F.inv(A[r][c]);
    for (auto& v : A[r]) v = F.mul(v, inv);
    for (long i = 0; i < rows; ++i)
      if (i != r && A[i][c]) {
        GF::Code m = A[i][c];
        for (long j = c; j <= ncols; ++j) A[i][j] = F.sub(A[i][j], F.mul(m, A[r][j]));
      }
    pivcol.push_back(c);
    ++r;
  }
  rank = r;
  for (long i = r; i < rows; ++i)
    if (A[i][ncols]) return false;
  x.assign(ncols, 0);
  for (long i = 0; i < r; ++i) x[pivcol[i]] = A[i][ncols];
  return true;
}

}  // namespace detail

inline long h_sigma_default_prec(long l, long D) { return 4 * l * D + 40; }

// Attempt the congruence with pole order l; throws ConventionMismatch when the
// linear system is inconsistent.
inline ASGenerator solve_h_sigma(const GlobalParams& params, long T = 0, long l = 3, const LambdaMap& map = LambdaMap::literal()) {
  if (l < 1) throw DomainError("classfield", "pole order l must be >= 1");
  const GF& Fp = GF::get(params.p, 1);
  GFPoly ps = p_sigma(params, map);
  for (const auto& c : ps.coeffs())
    if (!c.F->in_prime_field(c.v)) throw DomainError("classfield", "p_sigma is not defined over F_p");
  long D = ps.degree();
  long Tu = std::max(T, h_sigma_default_prec(l, D));
  long nunk = l * D + 1;
  long Ts = Tu + l * D;
  FpSeries s = sigma_q_mod(params.p, Ts, map);
  long Tq = std::max<long>((Tu + l * D) / 4 + 4, as_rhs_min_terms(params.p));
  FpSeries R = as_rhs(params, Tq).rescale(4);
  GFPoly psF = ps.map([&](const GFElem& a) { return GFElem(Fp, a.v); }, GFElem(Fp, 0));
  FpSeries P = psF.eval(s);
  FpSeries rhs = P.pow(l) * R;
  std::vector<FpSeries> pw{FpSeries::constant(GFElem(Fp, 1), 4)};
  for (long j = 1; j < nunk; ++j) pw.push_back(pw.back() * s);
  long lo = -l * D;
  long hi = Tu;  // exclusive
  for (const auto& x : pw) hi = std::min(hi, x.prec());
  hi = std::min(hi, rhs.prec());
  if (hi - lo < nunk + 40) throw PrecisionError("classfield", "expansions too short for the h(sigma) certificate");
  std::vector<std::vector<GF::Code>> A;
  for (long e = lo; e < hi; ++e) {
    std::vector<GF::Code> row(nunk + 1);
    for (long j = 0; j < nunk; ++j) row[j] = pw[j].coeff(e).v;
    row[nunk] = rhs.coeff(e).v;
    A.push_back(std::move(row));
  }
  std::vector<GF::Code> x;
  long rank = 0;
  if (!detail::solve_fp(A, Fp, nunk, x, rank))
    throw ConventionMismatch("classfield", "convention mismatch: no h(sigma) with deg <= " + std::to_string(l * D) + " satisfies the congruence with p(sigma)^" +
                                               std::to_string(l) + " (checked " + std::to_string(hi - lo) + " q^{1/4}-coefficients)");
  if (rank < nunk) throw ConventionMismatch("classfield", "h(sigma) is not unique at pole order " + std::to_string(l));
  ASGenerator g;
  g.l = l;
  std::vector<GFElem> hc;
  for (auto v : x) hc.push_back(GFElem(params.k(), v));
  g.h = GFPoly(std::move(hc), GFElem(params.k(), 0));
  g.unknowns = nunk;
  g.equations = hi - lo;
  g.certificate = g.equations - nunk;
  g.prec_u = hi;
  return g;
}

// Smallest l for which the congruence is solvable.
inline ASGenerator solve_h_sigma_minimal(const GlobalParams& params, long T = 0, long max_l = -1, const LambdaMap& map = LambdaMap::literal()) {
  if (max_l < 0) max_l = 2 * static_cast<long>(params.p) + 2;
  for (long l = 1; l <= max_l; ++l) {
    try {
      return solve_h_sigma(params, T, l, map);
    } catch (const ConventionMismatch&) {
    }
  }
  throw ConventionMismatch("classfield", "no pole order up to " + std::to_string(max_l) + " solves the congruence");
}

// ---------------------------------------------------------------------------
// m = 2: (k[sigma]/p_sigma^{l+1})^x -> (Z/p^2)^x.

class RhoM2 {
 public:
  RhoM2(const GlobalParams& params, const ASGenerator& gen, const LambdaMap& map = LambdaMap::literal())
      : params_(params), gen_(gen), kummer_(params, p_sigma(params, map)) {
    if (params.m != 2) throw DomainError("classfield", "RhoM2 needs m = 2");
    ps_ = kummer_.modulus();
    long L = 1;
    for (const auto& P : kummer_.places()) L = std::lcm(L, P.deg);
    big_ = &GF::get(params.p, params.delta * L);
    emb_ = std::make_unique<Embedding>(params.k(), *big_);
    GFPoly psB = embed_poly(ps_, *emb_), hB = embed_poly(gen.h, *emb_);
    for (auto r : roots_in(ps_, *big_)) {
      Root R;
      R.alpha = r;
      GFElem a(*big_, r);
      // p(a + s) = s u(s); A(s) = h(a + s)/u(s)^l to l terms.
      auto pl = psB.shift(a).coeffs();
      std::vector<GF::Code> uu;
      for (std::size_t i = 1; i < pl.size(); ++i) uu.push_back(pl[i].v);
      auto hs = hB.shift(a).coeffs();
      std::vector<GF::Code> hv;
      for (const auto& c : hs) hv.push_back(c.v);
      std::vector<GF::Code> ul = series_pow(uu, gen.l, gen.l);
      R.A = series_div(hv, ul, gen.l);
      roots_.push_back(std::move(R));
    }
    if (static_cast<long>(roots_.size()) != ps_.degree()) throw DomainError("classfield", "p_sigma does not split in the chosen field");
    conductor_ = ps_.pow(gen.l + 1);
  }

  const GFPoly& conductor() const { return conductor_; }
  const KummerRho& kummer() const { return kummer_; }
  std::uint64_t modulus() const { return static_cast<std::uint64_t>(params_.p) * params_.p; }

  // -Tr_{k/F_p} sum_alpha Res_alpha(g dlog x), g = h/p_sigma^l.
  GF::Code as_symbol(const GFPoly& x) const {
    const GF& B = *big_;
    long l = gen_.l;
    GFPoly xB = embed_poly(x, *emb_);
    GF::Code total = 0;
    for (const auto& R : roots_) {
      std::vector<GF::Code> xs = taylor(xB, R.alpha, l + 1);
      if (xs[0] == 0) throw RamifiedPlace("classfield", "ramified place: argument not coprime to p_sigma");
      std::vector<GF::Code> dx(l, 0);
      for (long i = 0; i < l; ++i) dx[i] = B.mul(B.from_int(i + 1), xs[i + 1]);
      std::vector<GF::Code> dl = series_div(dx, xs, l);
      GF::Code res = 0;
      for (long i = 0; i < l; ++i) res = B.add(res, B.mul(R.A[i], dl[l - 1 - i]));
      total = B.add(total, res);
    }
    auto back = emb_->preimage(total);
    if (!back) throw DomainError("classfield", "residue sum not in k");
    const GF& k = params_.k();
    return k.neg(k.trace(*back));
  }

  // Teichmueller(kummer) * (1 + p)^{AS}.
  std::uint64_t eval(const GFPoly& x) const {
    std::uint64_t p = params_.p, p2 = p * p;
    std::uint64_t u = kummer_.eval(x);
    std::uint64_t teich = powmod(u, p, p2);
    std::uint64_t a = as_symbol(x);
    return teich * ((1 + a * p) % p2) % p2;
  }

 private:
  struct Root {
    GF::Code alpha;
    std::vector<GF::Code> A;
  };

  std::vector<GF::Code> taylor(const GFPoly& f, GF::Code a, long terms) const {
    const GF& B = *big_;
    std::vector<GF::Code> c;
    for (const auto& x : f.coeffs()) c.push_back(x.v);
    std::vector<GF::Code> out;
    for (long t = 0; t < terms; ++t) {
      if (c.empty()) {
        out.push_back(0);
        continue;
      }
      // synthetic division by (x - a)
      std::vector<GF::Code> q(c.size() - 1, 0);
      GF::Code acc = 0;
      for (std::size_t i = c.size(); i-- > 0;) {
        acc = B.add(B.mul(acc, a), c[i]);
        if (i > 0) q[i - 1] = acc;
      }
      GF::Code r = acc;
      out.push_back(r);
      c = q;
    }
    return out;
  }

  std::vector<GF::Code> series_mul(const std::vector<GF::Code>& a, const std::vector<GF::Code>& b, long terms) const {
    const GF& B = *big_;
    std::vector<GF::Code> r(terms, 0);
    for (long i = 0; i < terms && i < static_cast<long>(a.size()); ++i)
      for (long j = 0; i + j < terms && j < static_cast<long>(b.size()); ++j) r[i + j] = B.add(r[i + j], B.mul(a[i], b[j]));
    return r;
  }
  std::vector<GF::Code> series_pow(const std::vector<GF::Code>& a, long e, long terms) const {
    std::vector<GF::Code> r(terms, 0);
    r[0] = 1;
    for (long i = 0; i < e; ++i) r = series_mul(r, a, terms);
    return r;
  }
  std::vector<GF::Code> series_div(const std::vector<GF::Code>& a, const std::vector<GF::Code>& b, long terms) const {
    const GF& B = *big_;
    GF::Code inv = B.inv(b[0]);
    std::vector<GF::Code> r(terms, 0);
    for (long i = 0; i < terms; ++i) {
      GF::Code s = i < static_cast<long>(a.size()) ? a[i] : 0;
      for (long j = 1; j <= i && j < static_cast<long>(b.size()); ++j) s = B.sub(s, B.mul(b[j], r[i - j]));
      r[i] = B.mul(s, inv);
    }
    return r;
  }

  GlobalParams params_;
  ASGenerator gen_;
  KummerRho kummer_;
  GFPoly ps_, conductor_;
  const GF* big_ = nullptr;
  std::unique_ptr<Embedding> emb_;
  std::vector<Root> roots_;
};

}  // namespace cuspann
