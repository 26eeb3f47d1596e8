#pragma once

#include <cstdint>
#include <string>

#include "cuspann/gf.hpp"
#include "cuspann/integer.hpp"

namespace cuspann {

struct GlobalParams {
  std::uint32_t p = 5;
  std::uint32_t delta = 1;
  std::uint32_t m = 1;
  std::uint64_t k_order = 5;

  static GlobalParams make(std::uint32_t p, std::uint32_t m = 1) {
    if (p == 2 || p == 3) throw DomainError("algebra-core", "p must differ from 2 and 3");
    if (p < 5 || !is_prime_u64(p)) throw DomainError("algebra-core", "p = " + std::to_string(p) + " is not a prime >= 5");
    if (m < 1) throw DomainError("algebra-core", "level exponent m must be >= 1");
    GlobalParams g;
    g.p = p;
    g.m = m;
    g.delta = ((p - 1) % 4 == 0) ? 1 : 2;
    g.k_order = ipow(p, g.delta);
    return g;
  }

  const GF& k() const { return GF::get(p, delta); }
  // p^m and the order of (Z/p^m)^x.
  std::uint64_t pm() const { return ipow(p, m); }
  std::uint64_t unit_group_order() const { return pm() / p * (p - 1); }
};

}  // namespace cuspann
