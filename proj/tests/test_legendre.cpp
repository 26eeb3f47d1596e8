#include <gtest/gtest.h>

#include "cuspann/legendre.hpp"

using namespace cuspann;

namespace {

std::vector<GF::Code> codes(const GFPoly& f) { return codes_of(f); }

// lambda = 16 u prod_{n>=1} ((1 + u^{2n}) / (1 + u^{2n-1}))^8, u = q^{1/2}
QSeries lambda_product(long T) {
  QSeries acc = QSeries::constant(Rational(1), 2, T);
  for (long n = 1; 2 * n - 1 < T; ++n) {
    QSeries num = QSeries::constant(Rational(1), 2, T) + QSeries::monomial(Rational(1), 2 * n, 2);
    QSeries den = QSeries::constant(Rational(1), 2, T) + QSeries::monomial(Rational(1), 2 * n - 1, 2);
    acc = acc * (num * den.inverse()).pow(8);
  }
  return (Rational(16) * acc.shift(1)).truncate(T);
}

}  // namespace

TEST(Deuring, Examples) {
  EXPECT_EQ(codes(deuring_poly(5)), (std::vector<GF::Code>{1, 4, 1}));
  EXPECT_EQ(codes(deuring_poly(7)), (std::vector<GF::Code>{6, 5, 5, 6}));
  EXPECT_EQ(deuring_poly(13).degree(), 6);
  EXPECT_THROW(deuring_poly(3), DomainError);
}

TEST(Deuring, SplitsOverQuadraticExtension) {
  for (unsigned p : {5u, 7u, 11u, 13u}) {
    auto H = deuring_poly(p);
    auto roots = roots_in(H, GF::get(p, 2));
    EXPECT_EQ(static_cast<long>(roots.size()), H.degree()) << p;
  }
}

TEST(PSigma, FiveLiteral) {
  auto P = GlobalParams::make(5);
  GFPoly f = p_sigma(P);
  // sigma^8 + sigma^6 - sigma^4 - sigma^2 + 1
  EXPECT_EQ(codes(f), (std::vector<GF::Code>{1, 0, 4, 0, 4, 0, 1, 0, 1}));
  for (long i = 1; i <= f.degree(); i += 2) EXPECT_EQ(f.coeff(i).v, 0u);
  EXPECT_EQ(poly_gcd(f, gf_x(P.k())).degree(), 0);
}

TEST(PSigma, RootsMapToSupersingularLambdas) {
  for (unsigned p : {5u, 7u, 13u}) {
    auto P = GlobalParams::make(p);
    for (const auto& map : {LambdaMap::literal(), LambdaMap::square()}) {
      GFPoly f = p_sigma(P, map);
      EXPECT_EQ(f.lead().v, 1u);
      GFPoly H = deuring_poly(p);
      // roots live in a small extension; find the field from the factor degrees
      long L = 1;
      for (const auto& fa : factor(f)) L = std::lcm(L, fa.f.degree());
      const GF& big = GF::get(p, P.delta * L);
      Embedding eH(GF::get(p, 1), big);
      GFPoly Hb = embed_poly(H, eH);
      auto rs = roots_in(f, big);
      EXPECT_FALSE(rs.empty());
      for (auto r : rs) EXPECT_TRUE(Hb(lambda_at(map, GFElem(big, r))).is_zero()) << p << " " << map.name;
    }
  }
}

TEST(PSigma, DegreeByMap) {
  auto P = GlobalParams::make(13);
  EXPECT_EQ(p_sigma(P, LambdaMap::literal()).degree(), 2 * 12);
  EXPECT_EQ(p_sigma(P, LambdaMap::square()).degree(), 12);
}

TEST(LambdaQ, LeadingTerms) {
  QSeries l = lambda_q(12);
  EXPECT_EQ(l.den(), 2);
  EXPECT_EQ(l.valuation(), 1);
  EXPECT_EQ(l.coeff(1), 16);
  EXPECT_EQ(l.coeff(2), -128);
  EXPECT_EQ(l.coeff(3), 704);
  QSeries one = QSeries::constant(Rational(1), 2, 12);
  QSeries m = l * (one - l);
  EXPECT_EQ(m.valuation(), 1);
  EXPECT_EQ(m.coeff(1), 16);
}

TEST(LambdaQ, MatchesProductFormula) {
  EXPECT_TRUE(QSeries::agree(lambda_q(40), lambda_product(40)));
}

TEST(SigmaQ, DefiningPropertyAndBranch) {
  auto map = LambdaMap::literal();
  auto sig = sigma_q(60, map);
  const QSeries& s = sig.s;
  EXPECT_EQ(s.den(), 4);
  EXPECT_EQ(s.valuation(), -1);
  EXPECT_EQ(s.prec(), 60);
  EXPECT_EQ(s.coeff(-1), Rational(1, 4));
  EXPECT_EQ(s.coeff(1), -1);
  EXPECT_EQ(s.coeff(3), Rational(-15, 2));
  EXPECT_EQ(s.coeff(5), -94);
  EXPECT_EQ(s.coeff(7), Rational(-5441, 4));
  for (long e = 0; e < 60; e += 2) EXPECT_EQ(s.coeff(e), 0);
  // lambda(s) * lambda(q) = 1 (expansion at the cusp lambda = infinity)
  QSeries lam_s = map.num.eval(s) * map.den.eval(s).inverse();
  QSeries prod = lam_s * lambda_q(40);
  QSeries one = QSeries::constant(Rational(1), 4);
  QSeries diff = prod - one;
  EXPECT_TRUE(diff.is_zero());
  EXPECT_GE(diff.prec(), 50);
}

TEST(SigmaQ, ReducesModFive) {
  auto sig = sigma_q(100);
  auto red = reduce_mod_p(sig.s, GF::get(5, 1));
  EXPECT_EQ(red.prec(), 100);
  EXPECT_EQ(red.coeff(-1).v, 4u);  // 1/4 = 4 mod 5
}

TEST(SigmaQ, SquareMap) {
  auto map = LambdaMap::square();
  auto sig = sigma_q(40, map);
  QSeries lam_s = sig.s * sig.s;
  QSeries diff = lam_s * lambda_q(30) - QSeries::constant(Rational(1), 4);
  EXPECT_TRUE(diff.is_zero());
}
