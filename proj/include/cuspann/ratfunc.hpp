#pragma once

#include <string>

#include "cuspann/poly_factor.hpp"

namespace cuspann {

// Rational function over a finite field, kept reduced with monic denominator.
struct RatFunc {
  GFPoly num, den;

  RatFunc() = default;
  RatFunc(GFPoly n, GFPoly d) : num(std::move(n)), den(std::move(d)) { normalize(); }
  static RatFunc poly(const GFPoly& n) { return RatFunc(n, GFPoly::constant(GFElem(*n.zero().F, 1))); }
  static RatFunc zero(const GF& F) { return poly(GFPoly(GFElem(F, 0))); }

  const GF& field() const { return *num.zero().F; }
  bool is_zero() const { return num.is_zero(); }

  void normalize() {
    if (den.is_zero()) throw DomainError("algebra-core", "rational function with zero denominator");
    if (num.is_zero()) {
      den = GFPoly::constant(GFElem(*den.zero().F, 1));
      return;
    }
    GFPoly g = poly_gcd(num, den);
    if (g.degree() > 0) {
      num = num / g;
      den = den / g;
    }
    GFElem li = den.lead().inv();
    num = li * num;
    den = li * den;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den == b.den) return RatFunc(a.num + b.num, a.den);
    return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  RatFunc operator-() const { return RatFunc(-num, den); }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num * b.num, a.den * b.den); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num == b.num && a.den == b.den; }

  RatFunc pow(unsigned long e) const { return RatFunc(num.pow(e), den.pow(e)); }

  std::string str(const std::string& var = "t") const {
    if (den.degree() == 0) return num.str(var);
    return "(" + num.str(var) + ")/(" + den.str(var) + ")";
  }
};

// x^p - x
inline RatFunc as_wp(const RatFunc& x) { return x.pow(x.field().p()) - x; }

}  // namespace cuspann
