#pragma once

#include <climits>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cuspann/poly.hpp"
#include "cuspann/ring.hpp"

namespace cuspann {

// Truncated Laurent series in u = q^{1/den}. Coefficient i of c_ belongs to
// u^{val_ + i}; everything from u^{prec_} on is unknown. prec_ == kExact marks
// a finite (exact) series.
template <class R>
class FracSeries {
 public:
  static constexpr long kExact = LONG_MAX / 4;

  FracSeries() = default;
  FracSeries(const R& zero, long den, long prec = kExact) : den_(den), val_(prec == kExact ? 0 : prec), prec_(prec), zero_(zero_like(zero)) {
    check_den();
  }
  // From coefficients starting at exponent val.
  FracSeries(std::vector<R> c, long val, long den, long prec, const R& zero)
      : den_(den), val_(val), prec_(prec), c_(std::move(c)), zero_(zero_like(zero)) {
    check_den();
    normalize();
  }

  static FracSeries constant(const R& a, long den = 1, long prec = kExact) { return FracSeries(std::vector<R>{a}, 0, den, prec, a); }
  static FracSeries monomial(const R& a, long e, long den = 1, long prec = kExact) {
    return FracSeries(std::vector<R>{a}, e, den, prec, a);
  }
  // Polynomial coefficients lifted into a series (needed by Poly::eval).
  static FracSeries lift(const R& a, const FracSeries& like) { return constant(a, like.den_); }

  long den() const { return den_; }
  long prec() const { return prec_; }
  bool exact() const { return prec_ == kExact; }
  const R& zero() const { return zero_; }
  // Lowest exponent carrying a nonzero coefficient (== prec for an O(u^prec)).
  long valuation() const { return c_.empty() ? prec_ : val_; }
  bool is_zero() const { return c_.empty(); }
  long length() const { return static_cast<long>(c_.size()); }

  R coeff(long e) const {
    if (e >= prec_) throw PrecisionError("algebra-core", "coefficient u^" + std::to_string(e) + " requested beyond truncation u^" + std::to_string(prec_));
    if (c_.empty() || e < val_ || e >= val_ + static_cast<long>(c_.size())) return zero_;
    return c_[e - val_];
  }
  R lead() const {
    if (c_.empty()) throw PrecisionError("algebra-core", "series has no known nonzero coefficient");
    return c_.front();
  }

  FracSeries truncate(long newprec) const {
    FracSeries r = *this;
    if (newprec < r.prec_) {
      r.prec_ = newprec;
      r.normalize();
    }
    return r;
  }
  FracSeries with_prec(long newprec) const {
    FracSeries r = *this;
    r.prec_ = newprec;
    r.normalize();
    return r;
  }

  // Same series, exponent denominator multiplied by k.
  FracSeries rescale(long newden) const {
    if (newden % den_ != 0) throw DomainError("algebra-core", "cannot rescale denominator " + std::to_string(den_) + " to " + std::to_string(newden));
    long k = newden / den_;
    if (k == 1) return *this;
    std::vector<R> c(c_.empty() ? 0 : (c_.size() - 1) * k + 1, zero_);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i * k] = c_[i];
    return FracSeries(std::move(c), val_ * k, newden, exact() ? kExact : prec_ * k, zero_);
  }
  // Substitute u -> u^k without changing the denominator (used for Frobenius twists).
  FracSeries stretch(long k) const {
    std::vector<R> c(c_.empty() ? 0 : (c_.size() - 1) * k + 1, zero_);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i * k] = c_[i];
    return FracSeries(std::move(c), val_ * k, den_, exact() ? kExact : prec_ * k, zero_);
  }

  FracSeries operator-() const {
    FracSeries r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  friend FracSeries operator+(const FracSeries& a0, const FracSeries& b0) {
    auto [a, b] = align(a0, b0);
    long prec = std::min(a.prec_, b.prec_);
    long lo = std::min(a.valuation(), b.valuation());
    long hi = std::max(a.val_ + a.length(), b.val_ + b.length());
    if (prec != kExact) hi = std::min(hi, prec);
    if (hi <= lo) return FracSeries(a.zero_, a.den_, prec);
    std::vector<R> c(hi - lo, a.zero_);
    for (long i = 0; i < a.length(); ++i)
      if (a.val_ + i < hi) c[a.val_ + i - lo] = a.c_[i];
    for (long i = 0; i < b.length(); ++i)
      if (b.val_ + i < hi) c[b.val_ + i - lo] = c[b.val_ + i - lo] + b.c_[i];
    return FracSeries(std::move(c), lo, a.den_, prec, a.zero_);
  }
  friend FracSeries operator-(const FracSeries& a, const FracSeries& b) { return a + (-b); }
  friend FracSeries operator*(const FracSeries& a0, const FracSeries& b0) {
    auto [a, b] = align(a0, b0);
    long va = a.valuation(), vb = b.valuation();
    long prec = kExact;
    if (!a.exact()) prec = std::min(prec, a.prec_ + vb);
    if (!b.exact()) prec = std::min(prec, b.prec_ + va);
    if (a.c_.empty() || b.c_.empty()) return FracSeries(a.zero_, a.den_, prec);
    long lo = va + vb;
    long n = static_cast<long>(a.c_.size() + b.c_.size()) - 1;
    if (prec != kExact) n = std::min(n, prec - lo);
    if (n <= 0) return FracSeries(a.zero_, a.den_, prec);
    std::vector<R> c(n, a.zero_);
    for (long i = 0; i < a.length() && i < n; ++i) {
      if (ring_is_zero(a.c_[i])) continue;
      long jmax = std::min(b.length(), n - i);
      for (long j = 0; j < jmax; ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return FracSeries(std::move(c), lo, a.den_, prec, a.zero_);
  }
  friend FracSeries operator*(const R& s, const FracSeries& a) {
    FracSeries r = a;
    for (auto& x : r.c_) x = s * x;
    r.normalize();
    return r;
  }
  FracSeries& operator+=(const FracSeries& b) { return *this = *this + b; }
  FracSeries& operator-=(const FracSeries& b) { return *this = *this - b; }
  FracSeries& operator*=(const FracSeries& b) { return *this = *this * b; }

  // Multiplicative inverse. An exact non-monomial input needs a relative
  // precision (number of terms) since its inverse is infinite.
  FracSeries inverse(long rel_terms = -1) const {
    if (c_.empty()) throw DomainError("algebra-core", "inverse of a series with no known nonzero term");
    if (!ring_is_unit(c_.front())) throw DomainError("algebra-core", "series inverse needs a unit leading coefficient");
    long rel;
    if (exact()) {
      if (c_.size() == 1) return monomial(ring_inverse(c_.front()), -val_, den_);
      if (rel_terms < 0) throw PrecisionError("algebra-core", "inverse of an exact series needs a term count");
      rel = rel_terms;
    } else {
      rel = prec_ - val_;
      if (rel_terms >= 0) rel = std::min(rel, rel_terms);
    }
    R inv0 = ring_inverse(c_.front());
    std::vector<R> d(rel, zero_);
    for (long k = 0; k < rel; ++k) {
      R s = (k == 0) ? one_like(zero_) : zero_;
      for (long j = 1; j <= k && j < length(); ++j) s = s - c_[j] * d[k - j];
      d[k] = s * inv0;
    }
    return FracSeries(std::move(d), -val_, den_, -val_ + rel, zero_);
  }
  friend FracSeries operator/(const FracSeries& a, const FracSeries& b) {
    if (b.exact() && !a.exact()) return a * b.inverse(a.prec_ - a.valuation());
    return a * b.inverse();
  }

  FracSeries pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FracSeries r = constant(one_like(zero_), den_), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  // Scale the coefficient of u^e by (e / den); requires den invertible in R.
  FracSeries theta() const {
    FracSeries r = *this;
    R dinv = ring_inverse(int_like(zero_, den_));
    for (long i = 0; i < length(); ++i) r.c_[i] = int_like(zero_, val_ + i) * dinv * c_[i];
    r.normalize();
    return r;
  }
  // d/du
  FracSeries derivative() const {
    std::vector<R> c;
    for (long i = 0; i < length(); ++i) c.push_back(int_like(zero_, val_ + i) * c_[i]);
    return FracSeries(std::move(c), val_ - 1, den_, exact() ? kExact : prec_ - 1, zero_);
  }

  // Multiply by u^k.
  FracSeries shift(long k) const {
    FracSeries r = *this;
    r.val_ += k;
    if (!r.exact()) r.prec_ += k;
    return r;
  }

  template <class F>
  auto map(F f, const decltype(f(std::declval<R>()))& zero) const {
    using S = decltype(f(std::declval<R>()));
    std::vector<S> c;
    c.reserve(c_.size());
    for (const auto& a : c_) c.push_back(f(a));
    return FracSeries<S>(std::move(c), val_, den_, prec_, zero);
  }

  // Terms with exponent < 0.
  FracSeries principal_part() const {
    std::vector<R> c;
    for (long i = 0; i < length() && val_ + i < 0; ++i) c.push_back(c_[i]);
    return FracSeries(std::move(c), val_, den_, kExact, zero_);
  }

  friend bool operator==(const FracSeries& a, const FracSeries& b) {
    return a.den_ == b.den_ && a.prec_ == b.prec_ && a.valuation() == b.valuation() && a.c_ == b.c_;
  }

  // Agreement of two series up to the smaller truncation.
  static bool agree(const FracSeries& a, const FracSeries& b) { return (a - b).is_zero(); }

  // One "exponent_num/exponent_den coefficient" line per nonzero term.
  std::string dump() const {
    std::ostringstream os;
    for (long i = 0; i < length(); ++i) {
      if (ring_is_zero(c_[i])) continue;
      os << (val_ + i) << "/" << den_ << " " << ring_str(c_[i]) << "\n";
    }
    if (!exact()) os << "# truncation " << prec_ << "/" << den_ << "\n";
    return os.str();
  }

  const std::vector<R>& raw() const { return c_; }

 private:
  void check_den() const {
    if (den_ < 1) throw DomainError("algebra-core", "exponent denominator must be positive");
  }
  void normalize() {
    if (!exact() && val_ + static_cast<long>(c_.size()) > prec_) c_.resize(std::max(0L, prec_ - val_), zero_);
    std::size_t k = 0;
    while (k < c_.size() && ring_is_zero(c_[k])) ++k;
    if (k) {
      c_.erase(c_.begin(), c_.begin() + k);
      val_ += static_cast<long>(k);
    }
    while (!c_.empty() && ring_is_zero(c_.back())) c_.pop_back();
    if (c_.empty()) val_ = exact() ? 0 : prec_;
  }
  static std::pair<FracSeries, FracSeries> align(const FracSeries& a, const FracSeries& b) {
    if (a.den_ == b.den_) return {a, b};
    long l = std::lcm(a.den_, b.den_);
    return {a.rescale(l), b.rescale(l)};
  }

  long den_ = 1;
  long val_ = 0;
  long prec_ = kExact;
  std::vector<R> c_;
  R zero_{};
};

template <class R>
struct RingTraits<FracSeries<R>> {
  using S = FracSeries<R>;
  static S zero(const S& x) { return S(x.zero(), x.den()); }
  static S one(const S& x) { return S::constant(one_like(x.zero()), x.den()); }
  static S from_int(const S& x, long v) { return S::constant(int_like(x.zero(), v), x.den()); }
  static bool is_zero(const S& x) { return x.is_zero(); }
  static bool is_unit(const S& x) { return !x.is_zero() && ring_is_unit(x.lead()); }
  static S inverse(const S& x) { return x.inverse(); }
  static std::string str(const S& x) { return x.dump(); }
};

// Solve F(y) = 0 by Newton iteration, F given as coefficients (in y) that are
// series. The seed must be a simple approximate root; the result is valid to
// absolute precision `target` (exponent units).
template <class R>
FracSeries<R> series_solve(const std::vector<FracSeries<R>>& F, const FracSeries<R>& seed, long target, int max_iter = 64) {
  using S = FracSeries<R>;
  if (F.empty()) throw DomainError("algebra-core", "empty relation");
  auto eval = [&](const S& y) {
    S acc = F.back();
    for (std::size_t i = F.size() - 1; i-- > 0;) acc = acc * y + F[i];
    return acc;
  };
  auto deriv = [&](const S& y) {
    S acc(F[0].zero(), F[0].den());
    for (std::size_t i = F.size() - 1; i >= 1; --i) {
      acc = acc * y + int_like(F[0].zero(), static_cast<long>(i)) * F[i];
      if (i == 1) break;
    }
    return acc;
  };
  // Iterates are exact candidate polynomials; the returned truncation is the
  // precision to which the final correction is known to vanish.
  S y = seed.with_prec(S::kExact);
  for (int it = 0; it < max_iter; ++it) {
    S fy = eval(y);
    S dy = deriv(y);
    if (dy.is_zero() || !ring_is_unit(dy.lead())) throw SingularSeed("algebra-core", "singular seed: derivative is not a unit at the seed");
    long terms = std::max(1L, target - fy.valuation() + dy.valuation() + 1);
    if (fy.exact() && fy.is_zero()) return y.with_prec(target);
    S corr = (fy * dy.inverse(terms)).truncate(target);
    if (corr.is_zero()) return y.truncate(std::min(target, corr.prec()));
    y = (y - corr).truncate(target).with_prec(S::kExact);
  }
  throw SingularSeed("algebra-core", "Newton iteration did not converge");
}

}  // namespace cuspann
