#pragma once

#include <string>

#include "cuspann/integer.hpp"

namespace cuspann {

// Per-type hooks used by the generic containers (Poly, FracSeries, ...).
// `like` carries runtime context such as a field or cyclotomic order.
template <class R>
struct RingTraits;

template <>
struct RingTraits<Rational> {
  static Rational zero(const Rational&) { return Rational(0); }
  static Rational one(const Rational&) { return Rational(1); }
  static Rational from_int(const Rational&, long v) { return Rational(v); }
  static bool is_zero(const Rational& x) { return x == 0; }
  static bool is_unit(const Rational& x) { return x != 0; }
  static Rational inverse(const Rational& x) {
    if (x == 0) throw DomainError("ring", "inverse of zero");
    return Rational(1) / x;
  }
  static std::string str(const Rational& x) { return x.get_str(); }
};

template <>
struct RingTraits<Integer> {
  static Integer zero(const Integer&) { return Integer(0); }
  static Integer one(const Integer&) { return Integer(1); }
  static Integer from_int(const Integer&, long v) { return Integer(v); }
  static bool is_zero(const Integer& x) { return x == 0; }
  static bool is_unit(const Integer& x) { return x == 1 || x == -1; }
  static Integer inverse(const Integer& x) {
    if (!is_unit(x)) throw DomainError("ring", "integer " + x.get_str() + " is not a unit");
    return x;
  }
  static std::string str(const Integer& x) { return x.get_str(); }
};

template <class R>
R zero_like(const R& x) { return RingTraits<R>::zero(x); }
template <class R>
R one_like(const R& x) { return RingTraits<R>::one(x); }
template <class R>
R int_like(const R& x, long v) { return RingTraits<R>::from_int(x, v); }
template <class R>
bool ring_is_zero(const R& x) { return RingTraits<R>::is_zero(x); }
template <class R>
bool ring_is_unit(const R& x) { return RingTraits<R>::is_unit(x); }
template <class R>
R ring_inverse(const R& x) { return RingTraits<R>::inverse(x); }
template <class R>
std::string ring_str(const R& x) { return RingTraits<R>::str(x); }

}  // namespace cuspann
