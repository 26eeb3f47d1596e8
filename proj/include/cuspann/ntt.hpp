#pragma once

#include <cstdint>
#include <vector>

#include "cuspann/integer.hpp"

namespace cuspann {

// Convolution of residue vectors modulo a small prime p, through a number
// theoretic transform modulo 998244353 (exact while (p-1)^2 * min(len) stays
// below that prime; otherwise schoolbook).
namespace ntt {

constexpr std::uint64_t kMod = 998244353;
constexpr std::uint64_t kRoot = 3;

inline void transform(std::vector<std::uint64_t>& a, bool invert) {
  std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = powmod(kRoot, (kMod - 1) / len, kMod);
    if (invert) w = powmod(w, kMod - 2, kMod);
    for (std::size_t i = 0; i < n; i += len) {
      std::uint64_t wn = 1;
      for (std::size_t j = 0; j < len / 2; ++j) {
        std::uint64_t u = a[i + j], v = a[i + j + len / 2] * wn % kMod;
        a[i + j] = u + v < kMod ? u + v : u + v - kMod;
        a[i + j + len / 2] = u >= v ? u - v : u + kMod - v;
        wn = wn * w % kMod;
      }
    }
  }
  if (invert) {
    std::uint64_t ninv = powmod(n, kMod - 2, kMod);
    for (auto& x : a) x = x * ninv % kMod;
  }
}

}  // namespace ntt

inline std::vector<std::uint32_t> convolve_mod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::size_t outn = a.size() + b.size() - 1;
  std::size_t shorter = std::min(a.size(), b.size());
  bool small = shorter < 64;
  bool fits = static_cast<unsigned __int128>(p - 1) * (p - 1) * shorter < ntt::kMod;
  if (small || !fits) {
    std::vector<std::uint64_t> acc(outn, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    }
    return std::vector<std::uint32_t>(acc.begin(), acc.end());
  }
  std::size_t n = 1;
  while (n < outn) n <<= 1;
  std::vector<std::uint64_t> fa(a.begin(), a.end()), fb(b.begin(), b.end());
  fa.resize(n, 0);
  fb.resize(n, 0);
  ntt::transform(fa, false);
  ntt::transform(fb, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] = fa[i] * fb[i] % ntt::kMod;
  ntt::transform(fa, true);
  std::vector<std::uint32_t> out(outn);
  for (std::size_t i = 0; i < outn; ++i) out[i] = static_cast<std::uint32_t>(fa[i] % p);
  return out;
}

}  // namespace cuspann
