#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cuspann/classfield.hpp"
#include "cuspann/cyclotomic.hpp"
#include "cuspann/kummer.hpp"
#include "cuspann/workers.hpp"

namespace cuspann {

using IntPoly = Poly<Integer>;
using CycPoly = Poly<CycInt>;

// cnt[j][e]: monic f of degree j coprime to the modulus with log_g rho(f) = e.
struct RhoCountTable {
  unsigned n = 0;
  long maxdeg = 0;
  std::vector<std::vector<std::uint64_t>> cnt;
};

// Enumerate monic polynomials degree by degree (a_0 fastest), evaluating at
// one root per modulus factor; values feed the discrete-log tables.
inline RhoCountTable rho_count_table(const KummerRho& rho, long maxdeg, unsigned workers = worker_count()) {
  const GF& k = rho.params().k();
  const std::uint64_t q = k.q();
  double size = std::pow(static_cast<double>(q), static_cast<double>(maxdeg));
  if (size > 5e8) throw ScaleError("lfunction", "enumerating monic polynomials of degree " + std::to_string(maxdeg) + " over F_" + std::to_string(q) + " exceeds desk scale");
  for (const auto& P : rho.places())
    if (!P.F->tabulated()) throw ScaleError("lfunction", "residue field F_" + std::to_string(P.F->q()) + " too large for the table path");
  RhoCountTable T;
  T.n = rho.n();
  T.maxdeg = maxdeg;
  T.cnt.assign(maxdeg + 1, std::vector<std::uint64_t>(T.n, 0));
  const auto& places = rho.places();
  const std::size_t np = places.size();
  // alpha^i in each residue field
  std::vector<std::vector<GF::Code>> apow(np);
  for (std::size_t i = 0; i < np; ++i) {
    GF::Code x = 1;
    for (long e = 0; e <= maxdeg; ++e) {
      apow[i].push_back(x);
      x = places[i].F->mul(x, places[i].alpha);
    }
  }
  T.cnt[0][0] = 1;
  for (long j = 1; j <= maxdeg; ++j) {
    std::uint64_t outer = ipow(q, static_cast<unsigned>(j - 1));
    auto parts = parallel_ranges<std::vector<std::uint64_t>>(outer, workers, [&](std::uint64_t b, std::uint64_t e) {
      std::vector<std::uint64_t> c(T.n, 0);
      std::vector<GF::Code> base(np);
      for (std::uint64_t o = b; o < e; ++o) {
        for (std::size_t i = 0; i < np; ++i) {
          const GF& F = *places[i].F;
          GF::Code v = apow[i][j];
          std::uint64_t t = o;
          for (long d = 1; d < j; ++d) {
            GF::Code a = static_cast<GF::Code>(t % q);
            t /= q;
            if (a) v = F.add(v, F.mul(places[i].k_in_F[a], apow[i][d]));
          }
          base[i] = v;
        }
        for (GF::Code a0 = 0; a0 < q; ++a0) {
          std::uint64_t s = 0;
          bool ram = false;
          for (std::size_t i = 0; i < np; ++i) {
            const GF& F = *places[i].F;
            GF::Code v = F.add(base[i], places[i].k_in_F[a0]);
            if (v == 0) {
              ram = true;
              break;
            }
            s += static_cast<std::uint64_t>(places[i].scale) * (F.log(v) % T.n);
          }
          if (!ram) ++c[s % T.n];
        }
      }
      return c;
    });
    for (const auto& c : parts)
      for (unsigned e = 0; e < T.n; ++e) T.cnt[j][e] += c[e];
  }
  return T;
}

// chi_b(u) = zeta_n^{b log_g u}; under the inverse convention the class is
// inverted before chi is applied.
struct DirichletChar {
  unsigned n = 1;
  unsigned b = 0;
  BetaConvention conv = BetaConvention::Class;

  bool trivial() const { return b % n == 0; }
  CycInt value_at_log(unsigned e) const {
    long ex = static_cast<long>(b) * e;
    if (conv == BetaConvention::Inverse) ex = -ex;
    return CycInt::zeta_pow(static_cast<int>(n), ex);
  }
  std::string label() const { return "chi_" + std::to_string(b); }
};

inline std::vector<DirichletChar> all_characters(unsigned n, BetaConvention conv = BetaConvention::Class) {
  std::vector<DirichletChar> out;
  for (unsigned b = 0; b < n; ++b) out.push_back({n, b, conv});
  return out;
}

struct LPoly {
  DirichletChar chi;
  std::vector<CycInt> c;  // truncated Euler-product coefficients, degrees 0..checked
  long stab_degree = 0;   // degree of the stabilized polynomial
  long checked = 0;       // highest degree verified
  bool even = true;       // chi o rho trivial on constants
  IntPoly closed_num;     // trivial chi: U(t) with sum = U(t)/(1 - q t)

  CycPoly poly() const {
    std::vector<CycInt> v(c.begin(), c.begin() + stab_degree + 1);
    return CycPoly(v, CycInt(static_cast<int>(chi.n), 0L));
  }
  std::string str() const {
    std::string s;
    for (long j = 0; j <= stab_degree; ++j) s += (j ? " " : "") + c[j].str();
    return s;
  }
};

namespace detail {

inline IntPoly int_poly(std::vector<long> v) {
  std::vector<Integer> c(v.begin(), v.end());
  return IntPoly(std::move(c), Integer(0));
}

// prod over modulus factors (1 - t^{deg pi})
inline IntPoly trivial_U(const KummerRho& rho) {
  IntPoly U = int_poly({1});
  for (const auto& P : rho.places()) {
    IntPoly f = int_poly({1});
    f.set_coeff(P.deg, Integer(-1));
    U = U * f;
  }
  return U;
}

inline CycInt to_cyc(const Integer& x, int n) { return CycInt(n, x); }

}  // namespace detail

// chi-component of the incomplete L-function from the count table.
inline LPoly dirichlet_L(const KummerRho& rho, const RhoCountTable& T, const DirichletChar& chi) {
  const int n = static_cast<int>(T.n);
  long dq = rho.modulus().degree();
  if (T.maxdeg < dq + 1) throw DomainError("lfunction", "maxdeg must be at least deg q(sigma) + 1 to certify stabilization");
  LPoly L;
  L.chi = chi;
  L.checked = T.maxdeg;
  for (long j = 0; j <= T.maxdeg; ++j) {
    CycInt s(n, 0L);
    for (unsigned e = 0; e < T.n; ++e)
      if (T.cnt[j][e]) s += chi.value_at_log(e) * CycInt(n, Integer(static_cast<unsigned long>(T.cnt[j][e])));
    L.c.push_back(s);
  }
  const GF& k = rho.params().k();
  for (GF::Code c = 1; c < k.q(); ++c) {
    GFPoly cp = gf_poly_codes(k, {c});
    if (!(chi.value_at_log(rho.log_eval(cp)) == CycInt(n, 1L))) L.even = false;
  }
  if (chi.trivial()) {
    // sum_j c_j t^j = U(t)/(1 - q t), checked to maxdeg
    L.closed_num = detail::trivial_U(rho);
    std::vector<Integer> series(T.maxdeg + 1, 0);
    for (long j = 0; j <= T.maxdeg; ++j) {
      Integer acc = 0, qp = 1;
      for (long i = j; i >= 0; --i) {
        acc += L.closed_num.coeff(i) * qp;
        qp *= static_cast<unsigned long>(k.q());
      }
      series[j] = acc;
    }
    for (long j = 0; j <= T.maxdeg; ++j)
      if (!(L.c[j] == CycInt(n, series[j])))
        throw NonPolynomialL("lfunction", "trivial character sum differs from U(t)/(1 - qt) at t^" + std::to_string(j));
    L.stab_degree = T.maxdeg;
    return L;
  }
  for (long j = dq; j <= T.maxdeg; ++j)
    if (!L.c[j].is_zero())
      throw NonPolynomialL("lfunction", "non-polynomial L: " + chi.label() + " has nonzero coefficient at t^" + std::to_string(j) + " (convention bug?)");
  long d = dq - 1;
  while (d > 0 && L.c[d].is_zero()) --d;
  L.stab_degree = d;
  return L;
}

// Complete L: for even nontrivial chi the place at infinity splits and the
// monic sum carries the trivial zero (1 - t).
inline CycPoly complete_L(const LPoly& L) {
  if (L.chi.trivial()) throw DomainError("lfunction", "complete_L is for nontrivial characters");
  CycPoly P = L.poly();
  if (!L.even) return P;
  int n = static_cast<int>(L.chi.n);
  CycPoly one_minus_t(std::vector<CycInt>{CycInt(n, 1L), CycInt(n, -1L)}, CycInt(n, 0L));
  auto [qo, r] = CycPoly::divmod(P, one_minus_t);
  if (!r.is_zero()) throw NonPolynomialL("lfunction", "even character L-function lacks the trivial zero at t = 1");
  return qo;
}

// Inverse roots under zeta_n -> exp(2 pi i/n).
inline std::vector<std::complex<double>> inverse_roots(const CycPoly& P, int root_index = 1) {
  long d = P.degree();
  std::vector<std::complex<double>> out;
  if (d <= 0) return out;
  // inverse roots are the roots of the reversed polynomial t^d P(1/t)
  std::vector<std::complex<double>> a(d + 1);
  for (long i = 0; i <= d; ++i) a[i] = P.coeff(d - i).to_complex(root_index);
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
  for (long i = 1; i < d; ++i) C(i, i - 1) = 1.0;
  for (long i = 0; i < d; ++i) C(i, d - 1) = -a[i] / a[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  for (long i = 0; i < d; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

// |c_{d-j}|^2 = q^{d-2j} |c_j|^2 exactly.
inline bool functional_equation_norms(const CycPoly& P, std::uint64_t q) {
  long d = P.degree();
  for (long j = 0; j <= d; ++j) {
    CycInt a = P.coeff(j), b = P.coeff(d - j);
    CycInt lhs = b * b.conj();
    CycInt rhs = a * a.conj();
    Integer s = 1;
    long ex = d - 2 * j;
    if (ex >= 0) {
      for (long i = 0; i < ex; ++i) s *= static_cast<unsigned long>(q);
      if (!(lhs == rhs * CycInt(P.zero().order(), s))) return false;
    } else {
      for (long i = 0; i < -ex; ++i) s *= static_cast<unsigned long>(q);
      if (!(lhs * CycInt(P.zero().order(), s) == rhs)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Group-ring norm at toy scale.

struct ToyGroup {
  std::vector<int> orders;  // Z/n_1 x ... x Z/n_s

  int size() const {
    int s = 1;
    for (int o : orders) s *= o;
    return s;
  }
  std::vector<int> coords(int idx) const {
    std::vector<int> c;
    for (int o : orders) {
      c.push_back(idx % o);
      idx /= o;
    }
    return c;
  }
  int index(const std::vector<int>& c) const {
    int idx = 0, w = 1;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      idx += (((c[i] % orders[i]) + orders[i]) % orders[i]) * w;
      w *= orders[i];
    }
    return idx;
  }
  int add(int a, int b) const {
    auto x = coords(a), y = coords(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return index(x);
  }
  int neg(int a) const {
    auto x = coords(a);
    for (auto& v : x) v = -v;
    return index(x);
  }
  int exponent() const {
    int e = 1;
    for (int o : orders) e = static_cast<int>(std::lcm(e, o));
    return e;
  }
};

// All subgroups, each as a sorted element list.
inline std::vector<std::vector<int>> subgroups(const ToyGroup& G) {
  auto close = [&](std::set<int> S) {
    bool grown = true;
    while (grown) {
      grown = false;
      std::vector<int> v(S.begin(), S.end());
      for (int a : v)
        for (int b : v)
          if (S.insert(G.add(a, b)).second) grown = true;
    }
    return S;
  };
  std::set<std::vector<int>> seen;
  std::vector<std::set<int>> frontier{{0}};
  seen.insert({0});
  while (!frontier.empty()) {
    std::vector<std::set<int>> next;
    for (const auto& S : frontier)
      for (int g = 0; g < G.size(); ++g) {
        if (S.count(g)) continue;
        auto T = S;
        T.insert(g);
        T = close(T);
        std::vector<int> v(T.begin(), T.end());
        if (seen.insert(v).second) next.push_back(T);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// Element of Z[G][t]: one integer polynomial in t per group element.
using GroupRingPoly = std::vector<IntPoly>;

namespace detail {

using ZH = std::vector<Integer>;  // element of Z[H], indexed by position in H

struct ZHRing {
  const ToyGroup* G;
  std::vector<int> H;
  std::map<int, int> pos;
  std::vector<std::vector<int>> table;  // pos of H[i] + H[j]

  ZHRing(const ToyGroup& g, const std::vector<int>& h) : G(&g), H(h) {
    for (std::size_t i = 0; i < H.size(); ++i) pos[H[i]] = static_cast<int>(i);
    table.assign(H.size(), std::vector<int>(H.size()));
    for (std::size_t i = 0; i < H.size(); ++i)
      for (std::size_t j = 0; j < H.size(); ++j) table[i][j] = pos.at(g.add(H[i], H[j]));
  }
  ZH zero() const { return ZH(H.size(), 0); }
  ZH one() const {
    ZH z = zero();
    z[pos.at(0)] = 1;
    return z;
  }
  ZH add(const ZH& a, const ZH& b) const {
    ZH r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
  }
  ZH neg(const ZH& a) const {
    ZH r = a;
    for (auto& x : r) x = -x;
    return r;
  }
  // acc += a b
  void addmul(ZH& acc, const ZH& a, const ZH& b) const {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j)
        if (b[j] != 0) mpz_addmul(acc[table[i][j]].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  ZH mul(const ZH& a, const ZH& b) const {
    ZH r = zero();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j)
        if (b[j] != 0) r[table[i][j]] += a[i] * b[j];
    }
    return r;
  }
};

// Berkowitz: division-free determinant over a commutative ring.
inline ZH berkowitz_det(const ZHRing& R, const std::vector<std::vector<ZH>>& A) {
  const std::size_t n = A.size();
  // coefficients of the characteristic polynomial, built up leading-principal-minor-wise
  std::vector<ZH> poly{R.one(), R.neg(A[0][0])};
  for (std::size_t r = 1; r < n; ++r) {
    // A = [[M, C], [Rw, a]] with M the leading r x r block
    std::vector<ZH> Cv(r), Rw(r);
    for (std::size_t i = 0; i < r; ++i) {
      Cv[i] = A[i][r];
      Rw[i] = A[r][i];
    }
    const ZH& a = A[r][r];
    // Toeplitz column: 1, -a, -R C, -R M C, -R M^2 C, ...
    std::vector<ZH> col{R.one(), R.neg(a)};
    std::vector<ZH> v = Cv;
    for (std::size_t k = 0; k + 1 <= r; ++k) {
      ZH s = R.zero();
      for (std::size_t i = 0; i < r; ++i) R.addmul(s, Rw[i], v[i]);
      col.push_back(R.neg(s));
      if (k + 1 < r) {
        std::vector<ZH> w(r, R.zero());
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) R.addmul(w[i], A[i][j], v[j]);
        v = std::move(w);
      }
    }
    std::vector<ZH> next(r + 2, R.zero());
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < poly.size(); ++j)
        if (i - j < col.size()) R.addmul(next[i], col[i - j], poly[j]);
    poly = std::move(next);
  }
  // det = (-1)^n * constant term of det(x - A) written as poly[n]
  ZH d = poly[n];
  return n % 2 ? R.neg(d) : d;
}

}  // namespace detail

// det of multiplication by U on Z[t][G] over Z[t][H]; result indexed by the
// sorted elements of H.
inline std::map<int, IntPoly> groupring_norm(const ToyGroup& G, const GroupRingPoly& U, const std::vector<int>& H0) {
  if (G.size() > 64) throw ScaleError("lfunction", "group-ring norm is toy scale (|G| <= 64)");
  if (static_cast<int>(U.size()) != G.size()) throw DomainError("lfunction", "U must have one polynomial per group element");
  std::vector<int> H = H0;
  std::sort(H.begin(), H.end());
  H.erase(std::unique(H.begin(), H.end()), H.end());
  std::set<int> Hs(H.begin(), H.end());
  if (!Hs.count(0)) throw DomainError("lfunction", "not a subgroup: identity missing");
  for (int a : H)
    for (int b : H)
      if (!Hs.count(G.add(a, b))) throw DomainError("lfunction", "not a subgroup: not closed");
  // coset representatives
  std::vector<int> reps;
  std::vector<int> coset_of(G.size(), -1), hpart(G.size(), -1);
  for (int g = 0; g < G.size(); ++g) {
    if (coset_of[g] >= 0) continue;
    int ci = static_cast<int>(reps.size());
    reps.push_back(g);
    for (std::size_t j = 0; j < H.size(); ++j) {
      int x = G.add(g, H[j]);
      coset_of[x] = ci;
      hpart[x] = static_cast<int>(j);
    }
  }
  const std::size_t r = reps.size();
  detail::ZHRing R(G, H);
  long degU = 0;
  for (const auto& u : U) degU = std::max(degU, u.degree());
  long npts = static_cast<long>(r) * std::max(degU, 0L) + 1;
  // det(t) at t = 0..npts-1, then interpolate each H-coordinate
  std::vector<detail::ZH> vals;
  for (long t = 0; t < npts; ++t) {
    std::vector<std::vector<detail::ZH>> A(r, std::vector<detail::ZH>(r, R.zero()));
    for (int g = 0; g < G.size(); ++g) {
      Integer ug = U[g](Integer(t));
      if (ug == 0) continue;
      for (std::size_t j = 0; j < r; ++j) {
        int x = G.add(g, reps[j]);  // U_g g * rep_j
        A[coset_of[x]][j][hpart[x]] += ug;
      }
    }
    vals.push_back(detail::berkowitz_det(R, A));
  }
  std::map<int, IntPoly> out;
  for (std::size_t h = 0; h < H.size(); ++h) {
    // Newton divided differences over Q
    std::vector<Rational> dd;
    for (long t = 0; t < npts; ++t) dd.push_back(Rational(vals[t][h]));
    for (long lvl = 1; lvl < npts; ++lvl)
      for (long i = npts - 1; i >= lvl; --i) dd[i] = (dd[i] - dd[i - 1]) / Rational(lvl);
    Poly<Rational> P(Rational(0)), basis = Poly<Rational>::constant(Rational(1));
    for (long i = 0; i < npts; ++i) {
      P = P + dd[i] * basis;
      basis = basis * Poly<Rational>(std::vector<Rational>{Rational(-i), Rational(1)}, Rational(0));
    }
    std::vector<Integer> c;
    for (long i = 0; i <= P.degree(); ++i) {
      if (P.coeff(i).get_den() != 1) throw DomainError("lfunction", "non-integral interpolation");
      c.push_back(P.coeff(i).get_num());
    }
    out[H[h]] = IntPoly(std::move(c), Integer(0));
  }
  return out;
}

// h = 1 specialization.
inline IntPoly specialize_h1(const std::map<int, IntPoly>& N) {
  IntPoly s(Integer(0));
  for (const auto& [h, P] : N) s = s + P;
  return s;
}

// prod over characters of G trivial on H of chi(U).
inline IntPoly character_product(const ToyGroup& G, const GroupRingPoly& U, const std::vector<int>& H) {
  int e = G.exponent();
  CycPoly acc = CycPoly::constant(CycInt(e, 1L));
  for (int c = 0; c < G.size(); ++c) {
    auto cc = G.coords(c);
    auto chi = [&](int g) {
      auto gc = G.coords(g);
      long ex = 0;
      for (std::size_t i = 0; i < gc.size(); ++i) ex += static_cast<long>(cc[i]) * gc[i] * (e / G.orders[i]);
      return ex % e;
    };
    bool triv = true;
    for (int h : H)
      if (chi(h) != 0) triv = false;
    if (!triv) continue;
    CycPoly cu(CycInt(e, 0L));
    for (int g = 0; g < G.size(); ++g) {
      CycInt z = CycInt::zeta_pow(e, chi(g));
      cu = cu + U[g].map([&](const Integer& a) { return z * CycInt(e, a); }, CycInt(e, 0L));
    }
    acc = acc * cu;
  }
  std::vector<Integer> c;
  for (long i = 0; i <= acc.degree(); ++i) c.push_back(acc.coeff(i).rational_value());
  return IntPoly(std::move(c), Integer(0));
}

// ---------------------------------------------------------------------------
// Zeta function of the Kummer model.

struct ZetaFunction {
  std::uint64_t q = 0;
  IntPoly numerator;    // P(t)
  IntPoly denominator;  // (1 - t)(1 - q t)
  long genus = 0;
  std::vector<LPoly> L;
  IntPoly U_trivial;    // trivial character: U(t)/(1 - q t)
  IntPoly ramified;     // prod (1 - t^{deg pi}) over the ramified finite places
  long inf_places = 0;

  // N_r from the numerator by Newton's identities.
  std::vector<Integer> counts(long r) const {
    std::vector<Integer> s(r + 1, 0), out;
    for (long k = 1; k <= r; ++k) {
      Integer acc = -Integer(k) * numerator.coeff(k);
      for (long i = 1; i < k; ++i) acc -= numerator.coeff(i) * s[k - i];
      s[k] = acc;
      Integer qk = 1;
      for (long i = 0; i < k; ++i) qk *= static_cast<unsigned long>(q);
      out.push_back(qk + 1 - s[k]);
    }
    return out;
  }
};

inline IntPoly cyc_to_int(const CycPoly& P) {
  std::vector<Integer> c;
  for (long i = 0; i <= P.degree(); ++i) {
    if (!P.coeff(i).is_rational()) throw DomainError("lfunction", "character product has non-rational coefficient at t^" + std::to_string(i));
    c.push_back(P.coeff(i).rational_value());
  }
  return IntPoly(std::move(c), Integer(0));
}

inline ZetaFunction zeta_assemble(const KummerModel& M, BetaConvention conv = BetaConvention::Class, long maxdeg = -1, unsigned workers = worker_count()) {
  if (M.params.m != 1) throw ScaleError("lfunction", "zeta assembly is implemented for m = 1 (the m = 2 conductor has degree " + std::to_string(7 * M.D) + ")");
  if (maxdeg < 0) maxdeg = M.D + 2;
  KummerRho rho(M.params, M.f);
  RhoCountTable T = rho_count_table(rho, maxdeg, workers);
  ZetaFunction Z;
  Z.q = M.params.k_order;
  Z.inf_places = M.inf_places;
  int n = static_cast<int>(rho.n());
  CycPoly prod = CycPoly::constant(CycInt(n, 1L));
  for (const auto& chi : all_characters(rho.n(), conv)) {
    LPoly L = dirichlet_L(rho, T, chi);
    if (chi.trivial()) Z.U_trivial = L.closed_num;
    else prod = prod * L.poly();
    Z.L.push_back(std::move(L));
  }
  // ramified finite places: one per factor, same degree; they cancel U_trivial
  Z.ramified = detail::trivial_U(rho);
  long ram_deg = 0;
  for (const auto& P : rho.places()) ram_deg += P.deg;
  if (ram_deg != M.D) throw DomainError("lfunction", "ramified place degrees do not add up to deg p_sigma");
  if (!(Z.ramified == Z.U_trivial)) throw DomainError("lfunction", "ramified factor does not cancel U(t)");
  // places above infinity contribute (1 - t)^{-inf_places}; one copy sits in the denominator
  IntPoly num = cyc_to_int(prod);
  IntPoly omt = detail::int_poly({1, -1});
  for (long i = 1; i < M.inf_places; ++i) {
    auto [qo, r] = Poly<Rational>::divmod(num.map([](const Integer& a) { return Rational(a); }, Rational(0)),
                                          omt.map([](const Integer& a) { return Rational(a); }, Rational(0)));
    if (!r.is_zero()) throw DomainError("lfunction", "places above infinity inconsistent with the character L-functions");
    std::vector<Integer> c;
    for (long j = 0; j <= qo.degree(); ++j) c.push_back(qo.coeff(j).get_num());
    num = IntPoly(std::move(c), Integer(0));
  }
  Z.numerator = num;
  Z.denominator = omt * detail::int_poly({1, -static_cast<long>(Z.q)});
  if (num.degree() % 2 != 0) throw DomainError("lfunction", "odd numerator degree");
  Z.genus = num.degree() / 2;
  return Z;
}

}  // namespace cuspann
