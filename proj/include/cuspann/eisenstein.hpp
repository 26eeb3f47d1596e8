#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "cuspann/gf.hpp"
#include "cuspann/params.hpp"
#include "cuspann/series.hpp"

namespace cuspann {

using QSeries = FracSeries<Rational>;
using FpSeries = FracSeries<GFElem>;

// Bernoulli number B_n (B_1 = -1/2) from sum_{k<=n} C(n+1,k) B_k = 0.
inline Rational bernoulli(unsigned n) {
  static std::mutex mu;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= n) {
    unsigned m = static_cast<unsigned>(cache.size());
    Rational s = 0;
    for (unsigned k = 0; k < m; ++k) s += Rational(binomial(m + 1, k)) * cache[k];
    cache.push_back(-s / Rational(m + 1));
  }
  return cache[n];
}

// sigma_k(n) for n < T.
inline std::vector<Integer> divisor_power_sums(unsigned k, long T) {
  std::vector<Integer> s(std::max(T, 1L), 0);
  for (long d = 1; d < T; ++d) {
    Integer dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), d, k);
    for (long n = d; n < T; n += d) s[n] += dk;
  }
  return s;
}

// A q-expansion tagged with a weight; weights add under multiplication and
// theta adds 2 (the characteristic-zero derivative convention).
template <class R>
struct Weighted {
  FracSeries<R> f;
  long weight = 0;

  friend Weighted operator*(const Weighted& a, const Weighted& b) { return {a.f * b.f, a.weight + b.weight}; }
  Weighted theta() const { return {f.theta(), weight + 2}; }
  Weighted theta_pow(long k) const {
    Weighted r = *this;
    for (long i = 0; i < k; ++i) r = r.theta();
    return r;
  }
  Weighted inverse(long rel_terms = -1) const { return {f.inverse(rel_terms), -weight}; }
};

struct EisensteinSeries {
  long weight;
  QSeries f;
};

// E_w = 1 - (2w/B_w) sum sigma_{w-1}(n) q^n, truncated at q^T.
inline EisensteinSeries eisenstein_series(long w, long T) {
  if (w < 4 || w % 2 != 0) throw DomainError("eisenstein", "weight must be even and >= 4, got " + std::to_string(w));
  if (T < 1) throw DomainError("eisenstein", "truncation must be positive");
  Rational c = -Rational(2 * w) / bernoulli(static_cast<unsigned>(w));
  auto sig = divisor_power_sums(static_cast<unsigned>(w - 1), T);
  std::vector<Rational> coeffs(T);
  coeffs[0] = 1;
  for (long n = 1; n < T; ++n) coeffs[n] = c * Rational(sig[n]);
  return {w, QSeries(std::move(coeffs), 0, 1, T, Rational(0))};
}

template <class R>
FracSeries<R> theta(const FracSeries<R>& f) { return f.theta(); }

// Coefficientwise reduction of a p-integral rational series.
inline FpSeries reduce_mod_p(const QSeries& f, const GF& F) {
  return f.map([&](const Rational& x) { return GFElem(F, static_cast<GF::Code>(rational_mod(x, F.p()))); }, GFElem(F, 0));
}

// Smallest p-adic valuation over the known coefficients.
inline int min_valuation(const QSeries& f, unsigned long p) {
  int v = 1 << 30;
  for (const auto& c : f.raw())
    if (c != 0) v = std::min(v, valuation(c, p));
  return v;
}

// theta^{p-2}(E_{p+1}) * E_{p-1}^{-3} over Q with weight metadata.
inline Weighted<Rational> as_rhs_rational(std::uint32_t p, long T) {
  Weighted<Rational> num{eisenstein_series(p + 1, T).f, static_cast<long>(p) + 1};
  Weighted<Rational> den{eisenstein_series(p - 1, T).f, static_cast<long>(p) - 1};
  Weighted<Rational> d3 = den * den * den;
  return num.theta_pow(p - 2) * d3.inverse();
}

inline long as_rhs_min_terms(std::uint32_t p) { return 3 * (static_cast<long>(p) - 1) * 4 + 40; }

// Mod-p reduction of theta^{p-2}(E_{p+1}) / E_{p-1}^3. Both factors are
// p-integral (checked) and E_{p-1} has constant term 1, so the quotient is
// computed after reduction.
inline FpSeries as_rhs(const GlobalParams& params, long T) {
  if (T < as_rhs_min_terms(params.p))
    throw PrecisionError("eisenstein", "as_rhs needs at least " + std::to_string(as_rhs_min_terms(params.p)) + " terms, got " + std::to_string(T));
  const GF& Fp = GF::get(params.p, 1);
  QSeries num = eisenstein_series(params.p + 1, T).f;
  QSeries den = eisenstein_series(params.p - 1, T).f;
  for (unsigned i = 0; i + 2 < params.p; ++i) num = num.theta();
  if (min_valuation(num, params.p) < 0 || min_valuation(den, params.p) < 0)
    throw DomainError("eisenstein", "Eisenstein data not p-integral");
  FpSeries n = reduce_mod_p(num, Fp), d = reduce_mod_p(den, Fp);
  FpSeries r = n * (d * d * d).inverse();
  if (!r.is_zero() && r.valuation() <= 0)
    throw DomainError("eisenstein", "as_rhs has a nonzero constant term");
  return r;
}

}  // namespace cuspann
