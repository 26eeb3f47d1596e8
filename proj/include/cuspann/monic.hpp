#pragma once

#include <optional>
#include <vector>

#include "cuspann/poly_factor.hpp"

namespace cuspann {

// Stream of the monic polynomials of one degree over F, in lexicographic
// order of (a_{d-1}, ..., a_0) with a_0 varying fastest.
class MonicEnum {
 public:
  MonicEnum(const GF& F, long degree) : F_(&F), deg_(degree), done_(degree < 0) {
    if (!done_) codes_.assign(static_cast<std::size_t>(degree), 0);
  }

  std::optional<GFPoly> next() {
    if (done_) return std::nullopt;
    std::vector<GF::Code> c = codes_;
    c.push_back(1);
    advance();
    return gf_poly_codes(*F_, c);
  }

  // Low coefficients of the polynomial next() would return.
  const std::vector<GF::Code>& peek_codes() const { return codes_; }
  bool done() const { return done_; }

 private:
  void advance() {
    for (std::size_t i = 0; i < codes_.size(); ++i) {
      if (++codes_[i] < F_->q()) return;
      codes_[i] = 0;
    }
    done_ = true;
  }

  const GF* F_;
  long deg_;
  bool done_;
  std::vector<GF::Code> codes_;
};

inline MonicEnum monic_enum(const GF& F, long degree) { return MonicEnum(F, degree); }

}  // namespace cuspann
