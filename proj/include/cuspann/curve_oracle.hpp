#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "cuspann/kummer.hpp"
#include "cuspann/workers.hpp"

namespace cuspann {

// Legendre curve y^2 = x(x-1)(x-l0) over the field of l0: supersingular iff
// the Frobenius trace is 0 mod p.
inline bool supersingular_test(std::uint32_t p, const GFElem& l0) {
  const GF& F = *l0.F;
  if (F.p() != p) throw DomainError("curve-oracle", "lambda lives in characteristic " + std::to_string(F.p()) + ", expected " + std::to_string(p));
  if (l0.v == 0 || l0.v == 1) throw DomainError("curve-oracle", "degenerate curve: lambda in {0, 1}");
  long s = 0;
  for (GF::Code x = 0; x < F.q(); ++x) {
    GF::Code v = F.mul(F.mul(x, F.sub(x, 1)), F.sub(x, l0.v));
    if (v == 0) continue;
    s += (F.log(v) % 2 == 0) ? 1 : -1;
  }
  long a = -s;
  return a % static_cast<long>(p) == 0;
}

// Frobenius trace a with #E(F) = |F| + 1 - a.
inline long legendre_trace(const GFElem& l0) {
  const GF& F = *l0.F;
  long s = 0;
  for (GF::Code x = 0; x < F.q(); ++x) {
    GF::Code v = F.mul(F.mul(x, F.sub(x, 1)), F.sub(x, l0.v));
    if (v) s += (F.log(v) % 2 == 0) ? 1 : -1;
  }
  return -s;
}

struct CountTable {
  std::uint64_t q = 0;
  std::vector<Integer> N;  // N[0] = N_1
};

// Number of places of degree one of the smooth model over F_{q^n}, q = |k|.
inline Integer kummer_count(const KummerModel& M, unsigned n, unsigned workers = worker_count()) {
  if (n == 0) throw DomainError("curve-oracle", "extension degree must be positive");
  double bits = n * M.params.delta * std::log2(static_cast<double>(M.params.p));
  if (bits > 40.0) throw ScaleError("curve-oracle", "enumeration over F_" + std::to_string(M.params.p) + "^" + std::to_string(n * M.params.delta) + " exceeds desk scale");
  const GF& big = GF::get(M.params.p, M.params.delta * n);
  Embedding e(M.k(), big);
  std::vector<GF::Code> f;
  for (long i = 0; i <= M.D; ++i) f.push_back(e(M.f.coeff(i).v));
  const std::uint64_t Q = big.q();
  const std::uint64_t nk = static_cast<std::uint64_t>(M.n);
  const std::uint64_t expo = (Q - 1) / nk;
  const bool tab = big.tabulated();
  auto parts = parallel_ranges<std::uint64_t>(Q, workers, [&](std::uint64_t b, std::uint64_t end) {
    std::uint64_t c = 0;
    for (std::uint64_t s = b; s < end; ++s) {
      GF::Code x = static_cast<GF::Code>(s), v = 0;
      for (std::size_t i = f.size(); i-- > 0;) v = big.add(big.mul(v, x), f[i]);
      if (v == 0) {
        c += 1;  // totally ramified: one place
      } else if (tab ? (big.log(v) % nk == 0) : (big.pow(v, expo) == 1)) {
        c += nk;
      }
    }
    return c;
  });
  Integer total = 0;
  for (auto c : parts) total += Integer(static_cast<unsigned long>(c));
  // Above infinity: when n | D the chart w = 1/sigma, z = y w^{D/n} is smooth
  // with z^n = lead(f) at w = 0; count those points directly.
  if (M.D % M.n == 0) {
    GF::Code lead = e(M.f.lead().v);
    std::uint64_t g = gcd_u64(nk, Q - 1);
    std::uint64_t at_inf = big.pow(lead, (Q - 1) / g) == 1 ? g : 0;
    return total + Integer(static_cast<unsigned long>(at_inf));
  }
  return total + M.inf_places;
}

inline CountTable kummer_sweep(const KummerModel& M, unsigned r, unsigned workers = worker_count()) {
  CountTable t;
  t.q = M.params.k_order;
  for (unsigned n = 1; n <= r; ++n) t.N.push_back(kummer_count(M, n, workers));
  return t;
}

// First r+1 coefficients of P(t) with Z(t) = P(t)/((1-t)(1-qt)).
inline std::vector<Integer> zeta_from_counts(const CountTable& T) {
  if (T.N.empty()) throw DomainError("curve-oracle", "need at least one count");
  std::size_t r = T.N.size();
  std::vector<Integer> s(r + 1, 0), c(r + 1, 0);
  Integer qn = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    qn *= static_cast<unsigned long>(T.q);
    s[i] = qn + 1 - T.N[i - 1];
  }
  c[0] = 1;
  for (std::size_t kk = 1; kk <= r; ++kk) {
    Integer acc = 0;
    for (std::size_t i = 1; i <= kk; ++i) acc += s[i] * c[kk - i];
    if (acc % static_cast<unsigned long>(kk) != 0)
      throw InconsistentCounts("curve-oracle", "non-integral numerator coefficient at t^" + std::to_string(kk));
    c[kk] = -acc / static_cast<unsigned long>(kk);
  }
  return c;
}

// sigma^a y^{-b} dsigma.
struct HoloDiff {
  long a = 0, b = 0;
  long min_val_finite = 0;  // over the ramified finite places
  long val_inf = 0;         // at each place above infinity
};

// Valuation of sigma^a y^{-b} dsigma at the finite place over a root of f;
// root_at_zero when that root is sigma = 0.
inline long diff_valuation_finite(const KummerModel& M, long a, long b, bool root_at_zero) {
  long vs = root_at_zero ? M.n : 0;
  return a * vs - b + (M.n - 1);
}

inline long diff_valuation_inf(const KummerModel& M, long a, long b) {
  long e = M.inf_ram, g = M.inf_places;
  return -a * e + b * M.D / g - e - 1;
}

inline std::vector<HoloDiff> holo_diff_basis(const KummerModel& M) {
  std::vector<HoloDiff> out;
  bool zero_root = M.f.coeff(0).is_zero();
  for (long b = 1; b < M.n; ++b) {
    for (long a = 0;; ++a) {
      long vi = diff_valuation_inf(M, a, b);
      if (vi < 0) break;
      HoloDiff h{a, b, diff_valuation_finite(M, a, b, zero_root), vi};
      if (h.min_val_finite < 0) throw DomainError("curve-oracle", "basis differential with a pole at a ramified place");
      out.push_back(h);
    }
  }
  if (static_cast<long>(out.size()) != M.genus)
    throw DomainError("curve-oracle", "holomorphic basis has " + std::to_string(out.size()) + " elements, genus is " + std::to_string(M.genus));
  return out;
}

}  // namespace cuspann
