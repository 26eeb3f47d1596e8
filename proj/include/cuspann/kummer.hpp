#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "cuspann/legendre.hpp"

namespace cuspann {

// The smooth projective curve y^n = f(sigma), n = p - 1, f = p_sigma monic.
// Only squarefree f is modelled (every finite branch point totally ramified).
struct KummerModel {
  GlobalParams params;
  LambdaMap map;
  GFPoly f;
  long n = 0;  // Kummer degree p - 1
  long D = 0;  // deg f
  std::vector<Factor> factors;
  long inf_places = 0;  // number of places above sigma = infinity (all of degree 1)
  long inf_ram = 0;     // their ramification index
  long genus = 0;

  static KummerModel build(const GlobalParams& params, const LambdaMap& map = LambdaMap::literal()) {
    KummerModel M;
    M.params = params;
    M.map = map;
    M.f = p_sigma(params, map);
    M.n = params.p - 1;
    M.D = M.f.degree();
    if (!is_squarefree(M.f))
      throw DomainError("curve-oracle", "p_sigma is not squarefree for p = " + std::to_string(params.p) + " (map " + map.name +
                                            "); the Kummer model with repeated branch points is not supported");
    M.factors = factor(M.f);
    long g = std::gcd(M.n, M.D);
    // f monic: the g places above infinity are rational since mu_g lies in k.
    M.inf_places = g;
    M.inf_ram = M.n / g;
    long twice = (M.n - 1) * M.D - M.n - g + 2;
    M.genus = twice / 2;
    return M;
  }

  const GF& k() const { return params.k(); }
};

}  // namespace cuspann
