#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "cuspann/error.hpp"

namespace cuspann {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Inverse of a modulo m; throws if not invertible.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr) {
    std::int64_t qq = r / nr;
    std::int64_t tmp = t - qq * nt;
    t = nt;
    nt = tmp;
    tmp = r - qq * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw DomainError("integer", "non-invertible residue " + std::to_string(a) + " mod " + std::to_string(m));
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

// Smallest positive generator of (Z/p^e)^x for odd prime p.
inline std::uint64_t primitive_root_prime_power(std::uint64_t p, unsigned e) {
  std::uint64_t pe = ipow(p, e);
  std::uint64_t phi = pe / p * (p - 1);
  auto fs = prime_factors(phi);
  for (std::uint64_t g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto f : fs)
      if (powmod(g, phi / f, pe) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw DomainError("integer", "no primitive root");
}

inline std::uint64_t mod_u(const Integer& x, std::uint64_t m) {
  Integer r = x % Integer(static_cast<unsigned long>(m));
  if (r < 0) r += static_cast<unsigned long>(m);
  return r.get_ui();
}

// Reduction of a p-integral rational modulo m (m a power of p or any modulus
// coprime to the denominator).
inline std::uint64_t rational_mod(const Rational& x, std::uint64_t m) {
  std::uint64_t d = mod_u(x.get_den(), m);
  if (gcd_u64(d, m) != 1)
    throw DomainError("integer", "denominator " + x.get_den().get_str() + " not invertible mod " + std::to_string(m));
  return mulmod(mod_u(x.get_num(), m), invmod(d, m), m);
}

inline int valuation(Integer x, unsigned long p) {
  if (x == 0) return 1 << 30;
  int v = 0;
  while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
    x /= p;
    ++v;
  }
  return v;
}

inline int valuation(const Rational& x, unsigned long p) {
  if (x == 0) return 1 << 30;
  return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace cuspann
