#pragma once

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "cuspann/gf.hpp"
#include "cuspann/poly.hpp"

namespace cuspann {

using GFPoly = Poly<GFElem>;

inline GFPoly gf_poly(const GF& F, const std::vector<long>& coeffs) {
  std::vector<GFElem> c;
  for (long v : coeffs) c.push_back(GFElem::from_int(F, v));
  return GFPoly(std::move(c), GFElem(F, 0));
}

inline GFPoly gf_poly_codes(const GF& F, const std::vector<GF::Code>& codes) {
  std::vector<GFElem> c;
  for (auto v : codes) c.push_back(GFElem(F, v));
  return GFPoly(std::move(c), GFElem(F, 0));
}

inline GFPoly gf_x(const GF& F) { return GFPoly::monomial(GFElem(F, 1), 1); }

inline std::vector<GF::Code> codes_of(const GFPoly& f) {
  std::vector<GF::Code> out;
  for (const auto& a : f.coeffs()) out.push_back(a.v);
  return out;
}

// Canonical order for factor lists: degree, then codes from the top down.
inline bool gf_poly_less(const GFPoly& a, const GFPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (long i = a.degree(); i >= 0; --i)
    if (a.coeff(i).v != b.coeff(i).v) return a.coeff(i).v < b.coeff(i).v;
  return false;
}

struct Factor {
  GFPoly f;
  int mult;
};

namespace detail {

inline const GF& field_of(const GFPoly& f) { return *f.zero().F; }

inline GFPoly pth_root(const GFPoly& c) {
  const GF& F = field_of(c);
  std::uint32_t p = F.p();
  std::vector<GFElem> out;
  for (long i = 0; i <= c.degree(); i += p) {
    GFElem a = c.coeff(i);
    out.push_back(GFElem(F, F.pow(a.v, F.q() / p)));
  }
  return GFPoly(std::move(out), c.zero());
}

inline void squarefree_rec(const GFPoly& f, int scale, std::vector<Factor>& out) {
  if (f.degree() <= 0) return;
  GFPoly fd = f.derivative();
  if (fd.is_zero()) {
    squarefree_rec(pth_root(f), scale * static_cast<int>(field_of(f).p()), out);
    return;
  }
  GFPoly c = poly_gcd(f, fd);
  GFPoly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    GFPoly y = poly_gcd(w, c);
    GFPoly z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i * scale});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree_rec(pth_root(c), scale * static_cast<int>(field_of(f).p()), out);
}

inline void equal_degree(const GFPoly& g, long d, std::mt19937_64& rng, std::vector<GFPoly>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const GF& F = field_of(g);
  Integer qd;
  mpz_ui_pow_ui(qd.get_mpz_t(), F.q(), d);
  Integer e = (qd - 1) / 2;
  GFPoly one = GFPoly::constant(GFElem(F, 1));
  for (;;) {
    std::vector<GFElem> c;
    for (long i = 0; i < g.degree(); ++i) c.push_back(GFElem(F, static_cast<GF::Code>(rng() % F.q())));
    GFPoly a(std::move(c), g.zero());
    if (a.degree() <= 0) continue;
    GFPoly b = a.powmod(e, g) - one;
    GFPoly h = poly_gcd(g, b);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

// Squarefree decomposition: monic factors with multiplicities (not irreducible).
inline std::vector<Factor> squarefree_decomposition(const GFPoly& f) {
  std::vector<Factor> out;
  detail::squarefree_rec(f.monic(), 1, out);
  return out;
}

inline bool is_squarefree(const GFPoly& f) {
  if (f.degree() <= 0) return true;
  return poly_gcd(f, f.derivative()).degree() == 0;
}

// Distinct-degree factorization of a squarefree monic polynomial.
inline std::vector<std::pair<GFPoly, long>> distinct_degree(const GFPoly& f0) {
  std::vector<std::pair<GFPoly, long>> out;
  const GF& F = detail::field_of(f0);
  GFPoly f = f0.monic();
  GFPoly x = gf_x(F);
  GFPoly h = x % f;
  for (long d = 1; f.degree() >= 2 * d; ++d) {
    h = h.powmod(Integer(static_cast<unsigned long>(F.q())), f);
    GFPoly g = poly_gcd(f, h - x);
    if (g.degree() > 0) {
      out.push_back({g, d});
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.push_back({f, f.degree()});
  return out;
}

// Full factorization into monic irreducibles, canonical order, with the
// leading coefficient dropped.
inline std::vector<Factor> factor(const GFPoly& f) {
  if (f.is_zero()) throw DomainError("algebra-core", "factor of zero polynomial");
  std::vector<Factor> out;
  std::mt19937_64 rng(0x5eedULL);
  for (const auto& sf : squarefree_decomposition(f)) {
    for (const auto& [g, d] : distinct_degree(sf.f)) {
      std::vector<GFPoly> parts;
      detail::equal_degree(g, d, rng, parts);
      for (auto& pp : parts) out.push_back({pp, sf.mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return gf_poly_less(a.f, b.f); });
  return out;
}

inline bool is_irreducible(const GFPoly& f) {
  if (f.degree() <= 0) return false;
  auto fs = factor(f);
  return fs.size() == 1 && fs[0].mult == 1;
}

// Map coefficients through an embedding into a larger field.
inline GFPoly embed_poly(const GFPoly& f, const Embedding& e) {
  return f.map([&](const GFElem& a) { return e(a); }, GFElem(e.big(), 0));
}

// Distinct roots of f in the field `big` (f over a subfield of it), sorted by code.
inline std::vector<GF::Code> roots_in(const GFPoly& f, const GF& big) {
  const GF& small = detail::field_of(f);
  Embedding e(small, big);
  GFPoly g = embed_poly(f, e);
  std::vector<GF::Code> out;
  if (big.q() <= (1u << 16)) {
    for (GF::Code a = 0; a < big.q(); ++a)
      if (g(GFElem(big, a)).v == 0) out.push_back(a);
    return out;
  }
  for (const auto& fac : factor(g))
    if (fac.f.degree() == 1) out.push_back((-fac.f.coeff(0)).v);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string factor_pattern(const std::vector<Factor>& fs) {
  std::string s;
  for (const auto& f : fs) {
    s += "(" + std::to_string(f.f.degree()) + ")";
    if (f.mult > 1) s += "^" + std::to_string(f.mult);
  }
  return s.empty() ? "(unit)" : s;
}

}  // namespace cuspann
