#pragma once

#include <string>
#include <vector>

#include "cuspann/eisenstein.hpp"
#include "cuspann/poly_factor.hpp"

namespace cuspann {

using QPoly = Poly<Rational>;

// H(lambda) = (-1)^m sum_{i<=m} C(m,i)^2 lambda^i, m = (p-1)/2, over F_p.
inline GFPoly deuring_poly(std::uint32_t p) {
  if (p == 2 || p == 3) throw DomainError("legendre", "Deuring polynomial needs p >= 5");
  if (!is_prime_u64(p)) throw DomainError("legendre", std::to_string(p) + " is not prime");
  const GF& F = GF::get(p, 1);
  unsigned m = (p - 1) / 2;
  std::vector<GFElem> c;
  for (unsigned i = 0; i <= m; ++i) {
    Integer b = binomial(m, i);
    Integer v = b * b;
    if (m % 2) v = -v;
    c.push_back(GFElem(F, static_cast<GF::Code>(mod_u(v, p))));
  }
  return GFPoly(std::move(c), GFElem(F, 0));
}

// lambda as a rational function num(sigma)/den(sigma) over Q.
struct LambdaMap {
  std::string name;
  QPoly num, den;

  // (sigma + 1/(2 sigma))^2 = (2 sigma^2 + 1)^2 / (4 sigma^2)
  static LambdaMap literal() {
    return {"literal", QPoly({Rational(1), Rational(0), Rational(4), Rational(0), Rational(4)}, Rational(0)),
            QPoly({Rational(0), Rational(0), Rational(4)}, Rational(0))};
  }
  // lambda = sigma^2
  static LambdaMap square() {
    return {"square", QPoly({Rational(0), Rational(0), Rational(1)}, Rational(0)), QPoly({Rational(1)}, Rational(0))};
  }
  static LambdaMap by_name(const std::string& n) {
    if (n == "literal") return literal();
    if (n == "square") return square();
    throw DomainError("legendre", "unknown lambda map '" + n + "' (expected literal|square)");
  }

  GFPoly num_mod(const GF& k) const { return reduce(num, k); }
  GFPoly den_mod(const GF& k) const { return reduce(den, k); }

  static GFPoly reduce(const QPoly& f, const GF& k) {
    std::vector<GFElem> c;
    for (long i = 0; i <= f.degree(); ++i) c.push_back(GFElem(k, k.from_int(static_cast<long>(rational_mod(f.coeff(i), k.p())))));
    return GFPoly(std::move(c), GFElem(k, 0));
  }
};

// den^m H(num/den) over k, made monic.
inline GFPoly p_sigma(const GlobalParams& params, const LambdaMap& map = LambdaMap::literal()) {
  const GF& k = params.k();
  GFPoly H = deuring_poly(params.p);
  Embedding e(GF::get(params.p, 1), k);
  H = embed_poly(H, e);
  GFPoly num = map.num_mod(k), den = map.den_mod(k);
  long m = H.degree();
  GFPoly acc(GFElem(k, 0));
  for (long i = 0; i <= m; ++i) acc = acc + H.coeff(i) * (num.pow(i) * den.pow(m - i));
  // Strip any sigma^j common factor left by the clearing (none for the literal map).
  while (!acc.is_zero() && acc.coeff(0).is_zero()) {
    std::vector<GFElem> c(acc.coeffs().begin() + 1, acc.coeffs().end());
    acc = GFPoly(std::move(c), GFElem(k, 0));
  }
  return acc.monic();
}

// lambda evaluated at sigma0 (den(sigma0) != 0).
inline GFElem lambda_at(const LambdaMap& map, const GFElem& s) {
  const GF& F = *s.F;
  GFPoly n = map.num_mod(GF::get(F.p(), 1)), d = map.den_mod(GF::get(F.p(), 1));
  Embedding e(GF::get(F.p(), 1), F);
  GFElem nv = embed_poly(n, e)(s), dv = embed_poly(d, e)(s);
  return nv / dv;
}

// lambda(q) = theta_2^4 / theta_3^4 in u = q^{1/2}, truncated at u^T.
inline QSeries lambda_q(long T) {
  if (T < 4) throw DomainError("legendre", "lambda_q needs T >= 4");
  std::vector<Rational> a(T, 0), b(T, 0);
  for (long n = 0; n * (n + 1) < T; ++n) a[n * (n + 1)] += 1;
  b[0] = 1;
  for (long n = 1; n * n < T; ++n) b[n * n] += 2;
  QSeries A(a, 0, 2, T, Rational(0)), B(b, 0, 2, T, Rational(0));
  QSeries A4 = A.pow(4), B4 = B.pow(4);
  QSeries t2 = Rational(16) * A4.shift(1);
  return (t2 * B4.inverse()).truncate(T);
}

struct SigmaExpansion {
  QSeries s;  // denominator 4
  std::string branch;
};

namespace detail {

// Exact k-th root of a positive rational, if it exists.
inline bool rational_root(const Rational& x, unsigned k, Rational& out) {
  if (x <= 0) return false;
  Integer n = x.get_num(), d = x.get_den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k)) return false;
  if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k)) return false;
  out = Rational(rn, rd);
  out.canonicalize();
  return true;
}

}  // namespace detail

// sigma(q) at the cusp where lambda = infinity: Lambda(q) = 1/lambda(q) and
// num(sigma) - Lambda den(sigma) = 0 solved by Newton from the dominant
// balance sigma ~ c q^{-v/4}. Returns precision >= T in q^{1/4} units.
inline SigmaExpansion sigma_q(long T, const LambdaMap& map = LambdaMap::literal()) {
  long kdeg = map.num.degree() - map.den.degree();
  if (kdeg <= 0) throw DomainError("legendre", "branch error: lambda map has no pole at sigma = infinity");
  for (long N = T / 2 + 6;; N += T / 2 + 6) {
    QSeries lam = lambda_q(N);
    QSeries Lam = lam.inverse().rescale(4);
    long v = -Lam.valuation();
    if (v <= 0 || v % kdeg != 0) throw DomainError("legendre", "branch error: valuation of Lambda incompatible with the map");
    Rational c = Lam.lead() * map.den.lead() / map.num.lead(), root;
    if (!detail::rational_root(c, static_cast<unsigned>(kdeg), root))
      throw DomainError("legendre", "branch error: dominant balance has no rational root");
    QSeries seed = QSeries::monomial(root, -v / kdeg, 4);
    std::vector<QSeries> F;
    long deg = std::max(map.num.degree(), map.den.degree());
    for (long i = 0; i <= deg; ++i) F.push_back(QSeries::constant(map.num.coeff(i), 4) - map.den.coeff(i) * Lam);
    QSeries s;
    try {
      s = series_solve(F, seed, T);
    } catch (const SingularSeed& e) {
      throw DomainError("legendre", std::string("branch error: ") + e.what());
    }
    if (s.prec() >= T) return {s.truncate(T), "sigma ~ +" + root.get_str() + " q^{-" + std::to_string(v / kdeg) + "/4} at the cusp lambda = infinity"};
    if (N > 8 * T + 64) throw DomainError("legendre", "branch error: precision did not reach target");
  }
}

// sigma(q) reduced modulo p, solved directly over F_p (same branch and seed as
// sigma_q, the rational seed reduced mod p).
inline FpSeries sigma_q_mod(std::uint32_t p, long T, const LambdaMap& map = LambdaMap::literal()) {
  const GF& Fp = GF::get(p, 1);
  long kdeg = map.num.degree() - map.den.degree();
  if (kdeg <= 0) throw DomainError("legendre", "branch error: lambda map has no pole at sigma = infinity");
  QSeries lam0 = lambda_q(8);
  QSeries Lam0 = lam0.inverse().rescale(4);
  long v = -Lam0.valuation();
  if (v <= 0 || v % kdeg != 0) throw DomainError("legendre", "branch error: valuation of Lambda incompatible with the map");
  Rational c = Lam0.lead() * map.den.lead() / map.num.lead(), root;
  if (!detail::rational_root(c, static_cast<unsigned>(kdeg), root))
    throw DomainError("legendre", "branch error: dominant balance has no rational root");
  auto red = [&](const Rational& x) { return GFElem(Fp, static_cast<GF::Code>(rational_mod(x, p))); };
  for (long N = T / 2 + 6;; N += T / 2 + 6) {
    FpSeries lam = lambda_q(N).map(red, GFElem(Fp, 0));
    FpSeries Lam = lam.inverse().rescale(4);
    FpSeries seed = FpSeries::monomial(red(root), -v / kdeg, 4);
    std::vector<FpSeries> F;
    long deg = std::max(map.num.degree(), map.den.degree());
    for (long i = 0; i <= deg; ++i) F.push_back(FpSeries::constant(red(map.num.coeff(i)), 4) - red(map.den.coeff(i)) * Lam);
    FpSeries s;
    try {
      s = series_solve(F, seed, T);
    } catch (const SingularSeed& e) {
      throw DomainError("legendre", std::string("branch error: ") + e.what());
    }
    if (s.prec() >= T) return s.truncate(T);
    if (N > 8 * T + 64) throw DomainError("legendre", "branch error: precision did not reach target");
  }
}

}  // namespace cuspann
