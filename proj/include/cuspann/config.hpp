#pragma once

#include <string>

#include "cuspann/adele.hpp"
#include "cuspann/classfield.hpp"
#include "cuspann/hecke.hpp"
#include "cuspann/legendre.hpp"
#include "cuspann/workers.hpp"

namespace cuspann {

enum class OutputFormat { Text, Json };

inline std::string to_string(OutputFormat f) { return f == OutputFormat::Text ? "text" : "json"; }
inline OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "json") return OutputFormat::Json;
  throw DomainError("cli", "unknown output format '" + s + "' (expected text|json)");
}

struct RunConfig {
  std::uint32_t p = 5;
  std::uint32_t m = 1;
  long terms = 0;  // 0: the command's own default
  BetaConvention beta = BetaConvention::Class;
  ResidueSign residue_sign = ResidueSign::Minus;
  std::string lambda_map = "literal";
  RamifiedPolicy policy = RamifiedPolicy::Strict;
  OutputFormat format = OutputFormat::Text;
  unsigned workers = worker_count();

  GlobalParams params() const { return GlobalParams::make(p, m); }
  LambdaMap map() const { return LambdaMap::by_name(lambda_map); }

  // Every convention flag; the worker count is left out so reports do not
  // depend on it.
  std::string header() const {
    return "# p=" + std::to_string(p) + " m=" + std::to_string(m) + " beta=" + to_string(beta) + " residue_sign=" + to_string(residue_sign) +
           " lambda=" + lambda_map + " ramified=" + to_string(policy);
  }
  nlohmann::ordered_json header_json() const {
    return {{"p", p}, {"m", m}, {"beta", to_string(beta)}, {"residue_sign", to_string(residue_sign)}, {"lambda", lambda_map}, {"ramified", to_string(policy)}};
  }
};

}  // namespace cuspann
