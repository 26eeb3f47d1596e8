#pragma once

#include <string>

#include "cuspann/ring.hpp"

namespace cuspann {

// a + eps*b with eps^2 = 0.
template <class R>
struct DualNumber {
  R re{};
  R eps{};

  DualNumber() = default;
  DualNumber(R a, R b) : re(std::move(a)), eps(std::move(b)) {}
  static DualNumber real(const R& a) { return DualNumber(a, zero_like(a)); }
  static DualNumber lift(const R& a, const DualNumber&) { return real(a); }

  friend DualNumber operator+(const DualNumber& x, const DualNumber& y) { return {x.re + y.re, x.eps + y.eps}; }
  friend DualNumber operator-(const DualNumber& x, const DualNumber& y) { return {x.re - y.re, x.eps - y.eps}; }
  DualNumber operator-() const { return {-re, -eps}; }
  friend DualNumber operator*(const DualNumber& x, const DualNumber& y) { return {x.re * y.re, x.re * y.eps + x.eps * y.re}; }
  friend bool operator==(const DualNumber& x, const DualNumber& y) { return x.re == y.re && x.eps == y.eps; }
  friend bool operator!=(const DualNumber& x, const DualNumber& y) { return !(x == y); }

  bool is_unit() const { return ring_is_unit(re); }
  DualNumber inverse() const {
    R ri = ring_inverse(re);
    return {ri, -(ri * ri * eps)};
  }
};

template <class R>
struct RingTraits<DualNumber<R>> {
  using D = DualNumber<R>;
  static D zero(const D& x) { return D::real(zero_like(x.re)); }
  static D one(const D& x) { return D::real(one_like(x.re)); }
  static D from_int(const D& x, long v) { return D::real(int_like(x.re, v)); }
  static bool is_zero(const D& x) { return ring_is_zero(x.re) && ring_is_zero(x.eps); }
  static bool is_unit(const D& x) { return x.is_unit(); }
  static D inverse(const D& x) { return x.inverse(); }
  static std::string str(const D& x) { return "(" + ring_str(x.re) + "+eps*" + ring_str(x.eps) + ")"; }
};

}  // namespace cuspann
