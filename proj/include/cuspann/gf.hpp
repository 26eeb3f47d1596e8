#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cuspann/integer.hpp"
#include "cuspann/ring.hpp"

namespace cuspann {

// Finite field F_{p^n}. Elements are encoded as integers sum d_i p^i where
// d_0 + d_1 x + ... is the residue modulo a fixed primitive polynomial. The
// modulus is the first primitive polynomial in a fixed enumeration order, so
// every run builds the same field.
class GF {
 public:
  using Code = std::uint32_t;

  static const GF& get(std::uint32_t p, std::uint32_t n) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<GF>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::unique_ptr<GF>(new GF(p, n))).first;
    return *it->second;
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return mod_; }
  bool tabulated() const { return !log_.empty(); }

  Code zero() const { return 0; }
  Code one() const { return 1; }
  // The primitive element (x for n > 1, smallest primitive root for n = 1).
  Code gen() const { return gen_; }

  Code from_int(long v) const {
    long r = v % static_cast<long>(p_);
    if (r < 0) r += p_;
    return static_cast<Code>(r);
  }

  Code add(Code a, Code b) const {
    if (n_ == 1) {
      Code s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!addt_.empty()) return addt_[static_cast<std::size_t>(a) * q_ + b];
    return add_digits(a, b);
  }
  Code neg(Code a) const {
    if (n_ == 1) return a ? p_ - a : 0;
    Code r = 0, w = 1;
    while (a) {
      Code d = a % p_;
      a /= p_;
      r += (d ? p_ - d : 0) * w;
      w *= p_;
    }
    return r;
  }
  Code sub(Code a, Code b) const { return add(a, neg(b)); }

  Code mul(Code a, Code b) const {
    if (a == 0 || b == 0) return 0;
    if (n_ == 1) return static_cast<Code>(static_cast<std::uint64_t>(a) * b % p_);
    if (!log_.empty()) return exp_[log_[a] + log_[b]];
    return mul_poly(a, b);
  }
  Code inv(Code a) const {
    if (a == 0) throw DomainError("algebra-core", "inverse of zero in F_" + std::to_string(q_));
    if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return pow(a, q_ - 2);
  }
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (!log_.empty()) return exp_[static_cast<std::size_t>(mulmod(log_[a], e % (q_ - 1), q_ - 1))];
    Code r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Code frob(Code a, unsigned times = 1) const {
    for (unsigned i = 0; i < times % n_; ++i) a = pow(a, p_);
    return a;
  }
  // Discrete log base gen(); requires a != 0.
  std::uint64_t log(Code a) const {
    if (a == 0) throw DomainError("algebra-core", "log of zero");
    if (!log_.empty()) return log_[a];
    Code x = 1;
    for (std::uint64_t k = 0; k < q_ - 1; ++k) {
      if (x == a) return k;
      x = mul(x, gen_);
    }
    throw DomainError("algebra-core", "log failed");
  }
  Code exp(std::uint64_t k) const { return pow(gen_, k); }

  // Absolute trace and norm down to F_p (returned as prime-field codes).
  Code trace(Code a) const {
    Code s = 0, x = a;
    for (unsigned i = 0; i < n_; ++i) {
      s = add(s, x);
      x = pow(x, p_);
    }
    return s;
  }
  Code norm(Code a) const { return pow(a, (q_ - 1) / (p_ - 1)); }
  bool in_prime_field(Code a) const { return a < p_; }

  std::vector<std::uint32_t> digits(Code a) const {
    std::vector<std::uint32_t> d(n_);
    for (unsigned i = 0; i < n_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }
  Code encode(const std::vector<std::uint32_t>& d) const {
    Code r = 0, w = 1;
    for (unsigned i = 0; i < n_ && i < d.size(); ++i) {
      r += (d[i] % p_) * w;
      w *= p_;
    }
    return r;
  }

  std::string str(Code a) const {
    if (n_ == 1) return std::to_string(a);
    return "[" + std::to_string(a) + "]";
  }

 private:
  GF(std::uint32_t p, std::uint32_t n) : p_(p), n_(n) {
    if (!is_prime_u64(p)) throw DomainError("algebra-core", "field characteristic " + std::to_string(p) + " is not prime");
    if (n == 0) throw DomainError("algebra-core", "field degree must be positive");
    std::uint64_t q = ipow(p, n);
    if (q >= (1ull << 31)) throw ScaleError("algebra-core", "field F_" + std::to_string(p) + "^" + std::to_string(n) + " exceeds supported size");
    q_ = q;
    if (n == 1) {
      gen_ = static_cast<Code>(primitive_root_prime_power(p, 1));
      mod_ = {p - gen_, 1};
    } else {
      find_modulus();
      gen_ = p;
    }
    if (q_ <= (1u << 22)) build_tables();
  }

  using SmallPoly = std::vector<std::uint32_t>;

  Code add_digits(Code a, Code b) const {
    Code r = 0, w = 1;
    while (a || b) {
      Code d = (a % p_ + b % p_) % p_;
      a /= p_;
      b /= p_;
      r += d * w;
      w *= p_;
    }
    return r;
  }

  SmallPoly mulmod_poly(const SmallPoly& a, const SmallPoly& b, const SmallPoly& m) const {
    std::vector<std::uint64_t> t(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i])
        for (std::size_t j = 0; j < b.size(); ++j) t[i + j] = (t[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p_;
    std::size_t dm = m.size() - 1;
    for (std::size_t i = t.size(); i-- > dm;) {
      std::uint64_t c = t[i] % p_;
      if (!c) continue;
      for (std::size_t j = 0; j <= dm; ++j) t[i - dm + j] = (t[i - dm + j] + (p_ - c) * m[j]) % p_;
    }
    SmallPoly r(dm, 0);
    for (std::size_t i = 0; i < dm; ++i) r[i] = static_cast<std::uint32_t>(t[i] % p_);
    return r;
  }

  SmallPoly powx(std::uint64_t e, const SmallPoly& m) const {
    std::size_t dm = m.size() - 1;
    SmallPoly r(dm, 0), b(dm, 0);
    r[0] = 1;
    if (dm > 1) b[1] = 1;
    else b[0] = static_cast<std::uint32_t>((p_ - m[0]) % p_);
    while (e) {
      if (e & 1) r = mulmod_poly(r, b, m);
      b = mulmod_poly(b, b, m);
      e >>= 1;
    }
    return r;
  }

  static bool is_one(const SmallPoly& a) {
    if (a.empty() || a[0] != 1) return false;
    for (std::size_t i = 1; i < a.size(); ++i)
      if (a[i]) return false;
    return true;
  }

  void find_modulus() {
    std::uint64_t total = q_;
    auto fs = prime_factors(q_ - 1);
    for (std::uint64_t c = 0; c < total; ++c) {
      SmallPoly m(n_ + 1, 0);
      std::uint64_t t = c;
      for (unsigned i = 0; i < n_; ++i) {
        m[i] = static_cast<std::uint32_t>(t % p_);
        t /= p_;
      }
      m[n_] = 1;
      if (m[0] == 0) continue;
      if (!is_one(powx(q_ - 1, m))) continue;
      bool prim = true;
      for (auto f : fs)
        if (is_one(powx((q_ - 1) / f, m))) {
          prim = false;
          break;
        }
      if (prim) {
        mod_ = m;
        return;
      }
    }
    throw DomainError("algebra-core", "no primitive polynomial found");
  }

  Code mul_poly(Code a, Code b) const { return encode(mulmod_poly(digits(a), digits(b), mod_)); }

  void build_tables() {
    log_.assign(q_, 0);
    exp_.assign(2 * (q_ - 1) + 1, 0);
    Code x = 1;
    for (std::uint64_t k = 0; k < q_ - 1; ++k) {
      exp_[k] = x;
      log_[x] = static_cast<std::uint32_t>(k);
      x = (n_ == 1) ? static_cast<Code>(static_cast<std::uint64_t>(x) * gen_ % p_) : mul_poly(x, gen_);
    }
    for (std::uint64_t k = q_ - 1; k < exp_.size(); ++k) exp_[k] = exp_[k - (q_ - 1)];
    if (n_ > 1 && q_ <= 1024) {
      addt_.assign(q_ * q_, 0);
      for (Code a = 0; a < q_; ++a)
        for (Code b = 0; b < q_; ++b) addt_[static_cast<std::size_t>(a) * q_ + b] = add_digits(a, b);
    }
  }

  std::uint32_t p_, n_;
  std::uint64_t q_ = 0;
  Code gen_ = 0;
  SmallPoly mod_;
  std::vector<std::uint32_t> log_, exp_, addt_;
};

// Value type wrapping a code together with its field.
struct GFElem {
  const GF* F = nullptr;
  GF::Code v = 0;

  GFElem() = default;
  GFElem(const GF& f, GF::Code c) : F(&f), v(c) {}
  static GFElem from_int(const GF& f, long x) { return GFElem(f, f.from_int(x)); }

  friend GFElem operator+(GFElem a, GFElem b) { return GFElem(*a.F, a.F->add(a.v, b.v)); }
  friend GFElem operator-(GFElem a, GFElem b) { return GFElem(*a.F, a.F->sub(a.v, b.v)); }
  friend GFElem operator*(GFElem a, GFElem b) { return GFElem(*a.F, a.F->mul(a.v, b.v)); }
  friend GFElem operator/(GFElem a, GFElem b) { return GFElem(*a.F, a.F->div(a.v, b.v)); }
  GFElem operator-() const { return GFElem(*F, F->neg(v)); }
  GFElem& operator+=(GFElem b) { return *this = *this + b; }
  GFElem& operator-=(GFElem b) { return *this = *this - b; }
  GFElem& operator*=(GFElem b) { return *this = *this * b; }
  friend bool operator==(GFElem a, GFElem b) { return a.v == b.v; }
  friend bool operator!=(GFElem a, GFElem b) { return a.v != b.v; }
  GFElem pow(std::uint64_t e) const { return GFElem(*F, F->pow(v, e)); }
  GFElem inv() const { return GFElem(*F, F->inv(v)); }
  bool is_zero() const { return v == 0; }
};

template <>
struct RingTraits<GFElem> {
  static GFElem zero(const GFElem& x) { return GFElem(*x.F, 0); }
  static GFElem one(const GFElem& x) { return GFElem(*x.F, 1); }
  static GFElem from_int(const GFElem& x, long v) { return GFElem::from_int(*x.F, v); }
  static bool is_zero(const GFElem& x) { return x.v == 0; }
  static bool is_unit(const GFElem& x) { return x.v != 0; }
  static GFElem inverse(const GFElem& x) { return x.inv(); }
  static std::string str(const GFElem& x) { return x.F->str(x.v); }
};

// Embedding of a subfield F_{p^s} into F_{p^n} (s | n), fixed by sending the
// generator of the small field to its smallest-log conjugate in the big one.
class Embedding {
 public:
  Embedding(const GF& small, const GF& big) : small_(&small), big_(&big) {
    if (small.p() != big.p() || big.n() % small.n() != 0)
      throw DomainError("algebra-core", "no embedding F_" + std::to_string(small.q()) + " -> F_" + std::to_string(big.q()));
    fwd_.assign(small.q(), 0);
    if (small.n() == 1) {
      for (GF::Code a = 0; a < small.q(); ++a) fwd_[a] = a;
    } else {
      std::uint64_t step = (big.q() - 1) / (small.q() - 1);
      const auto& m = small.modulus();
      GF::Code beta = 0;
      bool found = false;
      for (std::uint64_t k = 1; k < small.q() - 1 + 1 && !found; ++k) {
        GF::Code c = big.exp(step * k);
        GF::Code acc = 0;
        for (std::size_t i = m.size(); i-- > 0;) acc = big.add(big.mul(acc, c), m[i]);
        if (acc == 0) {
          beta = c;
          found = true;
        }
      }
      if (!found) throw DomainError("algebra-core", "embedding root not found");
      for (GF::Code a = 0; a < small.q(); ++a) {
        auto d = small.digits(a);
        GF::Code acc = 0;
        for (std::size_t i = d.size(); i-- > 0;) acc = big.add(big.mul(acc, beta), d[i]);
        fwd_[a] = acc;
      }
    }
    for (GF::Code a = 0; a < small.q(); ++a) back_[fwd_[a]] = a;
  }

  GF::Code operator()(GF::Code a) const { return fwd_[a]; }
  GFElem operator()(const GFElem& a) const { return GFElem(*big_, fwd_[a.v]); }
  std::optional<GF::Code> preimage(GF::Code b) const {
    auto it = back_.find(b);
    if (it == back_.end()) return std::nullopt;
    return it->second;
  }
  const GF& small() const { return *small_; }
  const GF& big() const { return *big_; }

 private:
  const GF* small_;
  const GF* big_;
  std::vector<GF::Code> fwd_;
  std::unordered_map<GF::Code, GF::Code> back_;
};

}  // namespace cuspann
