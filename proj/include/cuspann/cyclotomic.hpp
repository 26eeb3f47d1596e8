#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "cuspann/gf.hpp"
#include "cuspann/integer.hpp"
#include "cuspann/ring.hpp"

namespace cuspann {

namespace detail {

inline std::vector<Integer> int_poly_divexact(std::vector<Integer> a, const std::vector<Integer>& b) {
  // b monic
  std::size_t db = b.size() - 1;
  std::vector<Integer> qo(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    Integer c = a[i];
    qo[i - db] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (std::size_t i = 0; i < db; ++i)
    if (a[i] != 0) throw DomainError("algebra-core", "inexact integer polynomial division");
  return qo;
}

}  // namespace detail

// n-th cyclotomic polynomial, cached.
inline const std::vector<Integer>& cyclotomic_poly(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<Integer>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  std::vector<Integer> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) num = detail::int_poly_divexact(num, cyclotomic_poly(d));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, num).first->second;
}

inline int euler_phi(int n) {
  int r = n;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      while (n % d == 0) n /= d;
      r -= r / d;
    }
  if (n > 1) r -= r / n;
  return r;
}

// Element of Z[zeta_n], stored as a representative of degree < phi(n).
class CycInt {
 public:
  CycInt() : n_(1), c_(1, 0) {}
  CycInt(int n, long v) : n_(n), c_(euler_phi(n), 0) { c_[0] = v; }
  CycInt(int n, const Integer& v) : n_(n), c_(euler_phi(n), 0) { c_[0] = v; }
  CycInt(int n, std::vector<Integer> rep) : n_(n) {
    c_.assign(euler_phi(n), 0);
    reduce_into(rep);
  }

  static CycInt zeta_pow(int n, long k) {
    k %= n;
    if (k < 0) k += n;
    std::vector<Integer> rep(k + 1, 0);
    rep[k] = 1;
    return CycInt(n, rep);
  }

  int order() const { return n_; }
  const std::vector<Integer>& rep() const { return c_; }

  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  Integer rational_value() const {
    if (!is_rational()) throw DomainError("algebra-core", "cyclotomic integer is not rational: " + str());
    return c_[0];
  }
  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  // Image in Z[zeta_N] for n | N.
  CycInt embed(int N) const {
    if (N == n_) return *this;
    if (N % n_ != 0) throw DomainError("algebra-core", "no embedding Z[zeta_" + std::to_string(n_) + "] -> Z[zeta_" + std::to_string(N) + "]");
    int s = N / n_;
    std::vector<Integer> rep(static_cast<std::size_t>(s) * c_.size(), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) rep[i * s] = c_[i];
    return CycInt(N, rep);
  }

  // zeta -> zeta^k, gcd(k, n) = 1.
  CycInt galois(long k) const {
    k %= n_;
    if (k < 0) k += n_;
    CycInt r(n_, 0L);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) r = r + CycInt::zeta_pow(n_, static_cast<long>(i) * k) * CycInt(n_, c_[i]);
    return r;
  }
  CycInt conj() const { return galois(-1); }

  Integer norm() const {
    CycInt r(n_, 1L);
    for (int k = 1; k <= n_; ++k)
      if (gcd_u64(k, n_) == 1) r = r * galois(k);
    return r.rational_value();
  }

  std::complex<double> to_complex(int root_index = 1) const {
    std::complex<double> z = std::polar(1.0, 2.0 * M_PI * root_index / n_);
    std::complex<double> acc = 0, w = 1;
    for (const auto& x : c_) {
      acc += x.get_d() * w;
      w *= z;
    }
    return acc;
  }

  // Reduction modulo the prime above p fixed by zeta_n -> zeta_image.
  GF::Code reduce(const GF& F, GF::Code zeta_image) const {
    GF::Code acc = 0, w = 1;
    for (const auto& x : c_) {
      if (x != 0) acc = F.add(acc, F.mul(F.from_int(static_cast<long>(mod_u(x, F.p()))), w));
      w = F.mul(w, zeta_image);
    }
    return acc;
  }

  friend CycInt operator+(const CycInt& a, const CycInt& b) {
    auto [x, y] = align(a, b);
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
  }
  friend CycInt operator-(const CycInt& a, const CycInt& b) {
    auto [x, y] = align(a, b);
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
  }
  CycInt operator-() const {
    CycInt r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend CycInt operator*(const CycInt& a, const CycInt& b) {
    auto [x, y] = align(a, b);
    if (x.c_.size() == 1) {
      x.c_[0] *= y.c_[0];
      return x;
    }
    std::vector<Integer> prod(2 * x.c_.size() - 1, 0);
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == 0) continue;
      for (std::size_t j = 0; j < y.c_.size(); ++j)
        if (y.c_[j] != 0) prod[i + j] += x.c_[i] * y.c_[j];
    }
    CycInt r(x.n_, 0L);
    r.reduce_into(prod);
    return r;
  }
  CycInt& operator+=(const CycInt& b) { return *this = *this + b; }
  CycInt& operator-=(const CycInt& b) { return *this = *this - b; }
  CycInt& operator*=(const CycInt& b) { return *this = *this * b; }
  friend bool operator==(const CycInt& a, const CycInt& b) {
    if (a.n_ != b.n_) {
      if (a.is_rational() && b.is_rational()) return a.c_[0] == b.c_[0];
      return false;
    }
    return a.c_ == b.c_;
  }
  friend bool operator!=(const CycInt& a, const CycInt& b) { return !(a == b); }

  CycInt pow(unsigned long e) const {
    CycInt r(n_, 1L), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      std::string term = c_[i].get_str();
      if (i > 0) term += "*z" + std::to_string(n_) + (i > 1 ? "^" + std::to_string(i) : "");
      if (!s.empty() && term[0] != '-') s += "+";
      s += term;
    }
    return s.empty() ? "0" : s;
  }

 private:
  static std::pair<CycInt, CycInt> align(const CycInt& a, const CycInt& b) {
    if (a.n_ == b.n_) return {a, b};
    if (b.is_rational()) return {a, CycInt(a.n_, b.c_[0])};
    if (a.is_rational()) return {CycInt(b.n_, a.c_[0]), b};
    throw DomainError("algebra-core", "cyclotomic orders " + std::to_string(a.n_) + " and " + std::to_string(b.n_) + " differ; embed explicitly");
  }

  void reduce_into(std::vector<Integer> rep) {
    const auto& phi = cyclotomic_poly(n_);
    std::size_t d = phi.size() - 1;
    for (std::size_t i = rep.size(); i-- > d;) {
      Integer c = rep[i];
      if (c == 0) continue;
      for (std::size_t j = 0; j <= d; ++j) rep[i - d + j] -= c * phi[j];
    }
    for (std::size_t i = 0; i < d; ++i) c_[i] = i < rep.size() ? rep[i] : Integer(0);
  }

  int n_;
  std::vector<Integer> c_;
};

template <>
struct RingTraits<CycInt> {
  static CycInt zero(const CycInt& x) { return CycInt(x.order(), 0L); }
  static CycInt one(const CycInt& x) { return CycInt(x.order(), 1L); }
  static CycInt from_int(const CycInt& x, long v) { return CycInt(x.order(), v); }
  static bool is_zero(const CycInt& x) { return x.is_zero(); }
  static bool is_unit(const CycInt& x) {
    if (x.is_zero()) return false;
    Integer nm = x.norm();
    return nm == 1 || nm == -1;
  }
  static CycInt inverse(const CycInt& x) {
    // Units only: x^{-1} = (product of other conjugates) / norm.
    Integer nm = x.norm();
    if (nm != 1 && nm != -1) throw DomainError("algebra-core", "cyclotomic integer " + x.str() + " is not a unit");
    CycInt r(x.order(), nm);
    for (int k = 2; k <= x.order(); ++k)
      if (gcd_u64(k, x.order()) == 1) r = r * x.galois(k);
    return r;
  }
  static std::string str(const CycInt& x) { return x.str(); }
};

}  // namespace cuspann
