#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "cuspann/ring.hpp"

namespace cuspann {

// Dense univariate polynomial, coefficients low to high. The zero element of
// R is stored so that context-carrying rings (finite fields, cyclotomic
// orders) survive empty coefficient vectors.
template <class R>
class Poly {
 public:
  Poly() = default;
  explicit Poly(const R& zero) : zero_(zero_like(zero)) {}
  Poly(std::vector<R> c, const R& zero) : c_(std::move(c)), zero_(zero_like(zero)) { trim(); }

  static Poly constant(const R& a) { return Poly(std::vector<R>{a}, a); }
  static Poly monomial(const R& a, std::size_t k) {
    std::vector<R> c(k + 1, zero_like(a));
    c[k] = a;
    return Poly(std::move(c), a);
  }
  // x - a
  static Poly linear_root(const R& a) { return Poly(std::vector<R>{-a, one_like(a)}, a); }

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const R& zero() const { return zero_; }
  R coeff(long i) const { return (i >= 0 && i < static_cast<long>(c_.size())) ? c_[i] : zero_; }
  const std::vector<R>& coeffs() const { return c_; }
  const R& lead() const { return c_.back(); }
  void set_coeff(std::size_t i, const R& a) {
    if (i >= c_.size()) c_.resize(i + 1, zero_);
    c_[i] = a;
    trim();
  }

  Poly operator-() const {
    Poly r(zero_);
    r.c_.reserve(c_.size());
    for (const auto& a : c_) r.c_.push_back(-a);
    return r;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r(a.zero_);
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    r.c_.assign(n, a.zero_);
    for (std::size_t i = 0; i < n; ++i) {
      if (i < a.c_.size()) r.c_[i] = a.c_[i];
      if (i < b.c_.size()) r.c_[i] = r.c_[i] + b.c_[i];
    }
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.zero_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (ring_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  friend Poly operator*(const R& s, const Poly& a) {
    Poly r(a.zero_);
    r.c_.reserve(a.c_.size());
    for (const auto& x : a.c_) r.c_.push_back(s * x);
    r.trim();
    return r;
  }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Division with remainder; requires an invertible leading coefficient of b.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("algebra-core", "polynomial division by zero");
    R inv = ring_inverse(b.lead());
    Poly qo(a.zero_), r = a;
    long db = b.degree();
    if (r.degree() >= db) qo.c_.assign(r.degree() - db + 1, a.zero_);
    while (!r.is_zero() && r.degree() >= db) {
      long s = r.degree() - db;
      R c = r.lead() * inv;
      qo.c_[s] = c;
      for (long j = 0; j <= db; ++j) r.c_[s + j] = r.c_[s + j] - c * b.c_[j];
      r.trim();
    }
    qo.trim();
    return {qo, r};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  Poly monic() const {
    if (is_zero()) return *this;
    return ring_inverse(lead()) * (*this);
  }
  Poly derivative() const {
    Poly r(zero_);
    if (c_.size() <= 1) return r;
    r.c_.assign(c_.size() - 1, zero_);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = int_like(zero_, static_cast<long>(i)) * c_[i];
    r.trim();
    return r;
  }
  template <class S>
  S eval(const S& x) const {
    S acc = zero_like(x);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + lift(c_[i], x);
    return acc;
  }
  R operator()(const R& x) const {
    R acc = zero_;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }
  // f(g(x))
  Poly compose(const Poly& g) const {
    Poly acc(zero_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * g + constant(c_[i]);
    return acc;
  }
  Poly shift(const R& a) const { return compose(Poly(std::vector<R>{a, one_like(zero_)}, zero_)); }
  // x^deg f(1/x)
  Poly reversed(long deg) const {
    std::vector<R> c(deg + 1, zero_);
    for (long i = 0; i <= degree(); ++i) c[deg - i] = c_[i];
    return Poly(std::move(c), zero_);
  }
  Poly pow(unsigned long e) const {
    Poly r = constant(one_like(zero_)), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }
  Poly powmod(Integer e, const Poly& m) const {
    Poly r = constant(one_like(zero_)) % m, b = *this % m;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = (r * b) % m;
      e >>= 1;
      if (e > 0) b = (b * b) % m;
    }
    return r;
  }
  Poly truncate(std::size_t n) const {
    std::vector<R> c(c_.begin(), c_.begin() + std::min(n, c_.size()));
    return Poly(std::move(c), zero_);
  }

  template <class F>
  auto map(F f, const decltype(f(std::declval<R>()))& zero) const {
    using S = decltype(f(std::declval<R>()));
    std::vector<S> c;
    c.reserve(c_.size());
    for (const auto& a : c_) c.push_back(f(a));
    return Poly<S>(std::move(c), zero);
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (ring_is_zero(c_[i])) continue;
      std::string cs = ring_str(c_[i]);
      if (!first) os << " + ";
      first = false;
      bool unit_coeff = (cs == "1");
      if (i == 0) os << cs;
      else {
        if (!unit_coeff) os << cs << "*";
        os << var;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

 private:
  template <class S>
  static S lift(const R& a, const S& like) {
    if constexpr (std::is_same_v<S, R>) {
      (void)like;
      return a;
    } else {
      return S::lift(a, like);
    }
  }
  void trim() {
    while (!c_.empty() && ring_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<R> c_;
  R zero_{};
};

// Monic gcd over a field.
template <class R>
Poly<R> poly_gcd(Poly<R> a, Poly<R> b) {
  while (!b.is_zero()) {
    Poly<R> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Extended gcd: returns (g, s, t) with s a + t b = g monic.
template <class R>
std::tuple<Poly<R>, Poly<R>, Poly<R>> poly_xgcd(const Poly<R>& a, const Poly<R>& b) {
  const R& z = a.zero();
  Poly<R> r0 = a, r1 = b;
  Poly<R> s0 = Poly<R>::constant(one_like(z)), s1(z);
  Poly<R> t0(z), t1 = Poly<R>::constant(one_like(z));
  while (!r1.is_zero()) {
    auto [qq, rr] = Poly<R>::divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rr);
    Poly<R> s2 = s0 - qq * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly<R> t2 = t0 - qq * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  R li = ring_inverse(r0.lead());
  return {li * r0, li * s0, li * t0};
}

// Inverse of a modulo m; throws when not coprime.
template <class R>
Poly<R> poly_invmod(const Poly<R>& a, const Poly<R>& m) {
  auto [g, s, t] = poly_xgcd(a % m, m);
  if (g.degree() != 0) throw DomainError("algebra-core", "polynomial not invertible modulo " + m.str());
  return s % m;
}

}  // namespace cuspann
