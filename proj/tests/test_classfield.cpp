#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cuspann/classfield.hpp"
#include "cuspann/curve_oracle.hpp"

using namespace cuspann;

namespace {

GFPoly random_poly(const GF& F, long deg, std::mt19937_64& rng, bool monic = false) {
  std::vector<GF::Code> c(deg + 1);
  for (auto& x : c) x = static_cast<GF::Code>(rng() % F.q());
  if (monic) c.back() = 1;
  return gf_poly_codes(F, c);
}

GFPoly random_coprime(const GFPoly& m, long deg, std::mt19937_64& rng) {
  const GF& F = *m.zero().F;
  for (;;) {
    GFPoly x = random_poly(F, deg, rng);
    if (!x.is_zero() && poly_gcd(x, m).degree() == 0) return x;
  }
}

GFPoly random_irreducible(const GF& F, long deg, std::mt19937_64& rng) {
  for (;;) {
    GFPoly x = random_poly(F, deg, rng, true);
    if (is_irreducible(x)) return x;
  }
}

const GlobalParams P5 = GlobalParams::make(5);

}  // namespace

TEST(FrobeniusClass, Examples) {
  const GF& k = P5.k();
  auto M = RayModulus::make(gf_x(k));
  EXPECT_EQ(codes_of(frobenius_class(M, gf_poly(k, {1, 1}), BetaConvention::Inverse).rep), (std::vector<GF::Code>{1}));
  EXPECT_EQ(codes_of(frobenius_class(M, gf_poly(k, {2, 1}), BetaConvention::Inverse).rep), (std::vector<GF::Code>{3}));
  EXPECT_EQ(codes_of(frobenius_class(M, gf_poly(k, {2, 1}), BetaConvention::Class).rep), (std::vector<GF::Code>{2}));
  EXPECT_THROW(frobenius_class(M, gf_x(k)), RamifiedPlace);
}

TEST(FrobeniusClass, MultiplicativeOnSplitPlaces) {
  const GF& k = P5.k();
  auto M = RayModulus::make(p_sigma(P5));
  for (auto conv : {BetaConvention::Class, BetaConvention::Inverse})
    for (long a = 0; a < 5; ++a)
      for (long b = 0; b < 5; ++b) {
        GFPoly x = gf_poly(k, {a, 1}), y = gf_poly(k, {b, 1});
        auto cx = frobenius_class(M, x, conv), cy = frobenius_class(M, y, conv);
        EXPECT_EQ(frobenius_class(M, x * y, conv).rep, class_mul(M, cx, cy).rep);
      }
}

TEST(KummerRho, BasicValues) {
  KummerRho rho(P5, p_sigma(P5));
  const GF& k = P5.k();
  EXPECT_EQ(rho.eval(gf_poly(k, {1})), 1u);
  // constants: c^{(Q-1)/4} per quartic factor, two factors
  for (long c = 1; c < 5; ++c) {
    GF::Code expect = k.pow(k.pow(c, (625 - 1) / 4), 2);
    EXPECT_EQ(rho.eval(gf_poly(k, {c})), expect);
  }
  EXPECT_THROW(rho.eval(p_sigma(P5)), RamifiedPlace);
}

TEST(KummerRho, TwoPathsAgreeAndMultiplicative) {
  GFPoly f = p_sigma(P5);
  KummerRho rho(P5, f);
  const GF& Fp = GF::get(5, 1);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    GFPoly x = random_coprime(f, static_cast<long>(rng() % 12), rng), y = random_coprime(f, static_cast<long>(rng() % 12), rng);
    GF::Code rx = rho.eval(x), ry = rho.eval(y);
    EXPECT_EQ(Fp.pow(rho.generator(), rho.log_eval(x)), rx);
    EXPECT_EQ(rho.eval(x * y), Fp.mul(rx, ry));
    EXPECT_EQ(rho.eval((x * y) % f), Fp.mul(rx, ry));
  }
}

TEST(KummerRho, KernelIndex) {
  GFPoly f = p_sigma(P5);
  KummerRho rho(P5, f);
  const GF& k = P5.k();
  std::vector<long> hits(4, 0);
  long units = 0;
  for (MonicEnum it(k, 8);;) {
    auto g = it.next();
    if (!g) break;
    GFPoly r = *g - f;  // runs over every residue class once
    if (r.is_zero() || poly_gcd(r, f).degree() > 0) continue;
    ++units;
    ++hits[rho.log_eval(r)];
  }
  EXPECT_EQ(units, (625 - 1) * (625 - 1));
  for (long h : hits) EXPECT_EQ(h, units / 4);
}

// Frobenius on points of y^4 = f(s0) over F_{5^4} scales y by rho(sigma - s0).
TEST(KummerRho, MatchesFrobeniusOnFibres) {
  GFPoly f = p_sigma(P5);
  KummerRho rho(P5, f);
  const GF& k = P5.k();
  const GF& big = GF::get(5, 4);
  Embedding e(k, big);
  int checked = 0;
  for (GF::Code s0 = 0; s0 < 5; ++s0) {
    GF::Code c = f(GFElem(k, s0)).v;
    if (c == 0) continue;
    GF::Code y = 0;
    for (GF::Code t = 1; t < big.q(); ++t)
      if (big.pow(t, 4) == e(c)) {
        y = t;
        break;
      }
    ASSERT_NE(y, 0u);
    GF::Code scale = big.div(big.pow(y, 5), y);
    GF::Code r = rho.eval(gf_poly(k, {-static_cast<long>(s0), 1}));
    EXPECT_EQ(scale, e(r)) << s0;
    ++checked;
  }
  EXPECT_EQ(checked, 5);
}

TEST(ASReduce, Examples) {
  const GF& k = P5.k();
  GFPoly t = gf_x(k), one = gf_poly(k, {1});
  auto r1 = as_reduce(RatFunc(one, t.pow(5)), t);
  EXPECT_EQ(r1.l, 1);
  EXPECT_EQ(r1.h, one);
  EXPECT_EQ(r1.u, RatFunc(one, t));
  auto r2 = as_reduce(RatFunc(one, t.pow(25)), t);
  EXPECT_EQ(r2.l, 1);
  EXPECT_EQ(r2.h, one);
  EXPECT_EQ(r2.u, RatFunc(one, t.pow(5)) + RatFunc(one, t));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    GFPoly w = random_poly(k, 1 + static_cast<long>(rng() % 6), rng);
    auto r = as_reduce(as_wp(RatFunc::poly(w)), t);
    EXPECT_TRUE(r.h.is_zero());
    EXPECT_TRUE(as_wp(r.u) == as_wp(RatFunc::poly(w)));
  }
  EXPECT_THROW(as_reduce(RatFunc(one, gf_poly(k, {4, 1})), t), UnreducibleRamification);
  EXPECT_THROW(as_reduce(RatFunc::poly(t), t), UnreducibleRamification);
}

TEST(ASReduce, RandomPerturbedIdentity) {
  for (auto [p, d] : std::vector<std::pair<unsigned, unsigned>>{{5, 1}, {7, 2}}) {
    const GF& k = GF::get(p, d);
    std::mt19937_64 rng(100 + p);
    GFPoly pt = random_irreducible(k, 2, rng) * random_irreducible(k, 1, rng);
    for (int trial = 0; trial < 50; ++trial) {
      long l0 = 1 + static_cast<long>(rng() % 4);
      GFPoly h0 = random_poly(k, l0 * pt.degree() - 1, rng);
      GFPoly other = random_irreducible(k, 1 + static_cast<long>(rng() % 2), rng);
      if (poly_gcd(other, pt).degree() > 0) other = pt;
      RatFunc w = RatFunc(random_poly(k, 3, rng), pt.pow(1 + rng() % 2) * other) + RatFunc::poly(random_poly(k, 2, rng));
      RatFunc f = RatFunc(h0, pt.pow(l0)) + as_wp(w);
      auto r = as_reduce(f, pt);
      EXPECT_LE(r.h.degree(), r.l * pt.degree());
      EXPECT_TRUE((f - RatFunc(r.h, pt.pow(r.l)) - as_wp(r.u)).is_zero());
    }
  }
}

TEST(HSigma, DefaultPoleOrderIsInconsistent) {
  EXPECT_THROW(solve_h_sigma(P5), ConventionMismatch);
}

TEST(HSigma, MinimalPoleOrder) {
  auto g = solve_h_sigma_minimal(P5);
  EXPECT_EQ(g.l, 6);
  EXPECT_EQ(g.h.degree(), 44);
  EXPECT_GE(g.certificate, 40);
  // independent residual check: h(sigma) - p(sigma)^l * rhs vanishes
  const GF& Fp = GF::get(5, 1);
  long T = 120;
  FpSeries s = sigma_q_mod(5, T + 48);
  GFPoly ps = p_sigma(P5);
  FpSeries lhs = g.h.map([&](const GFElem& a) { return GFElem(Fp, a.v); }, GFElem(Fp, 0)).eval(s);
  FpSeries rhs = ps.map([&](const GFElem& a) { return GFElem(Fp, a.v); }, GFElem(Fp, 0)).eval(s).pow(6) * as_rhs(P5, 100).rescale(4);
  FpSeries diff = (lhs - rhs).truncate(T);
  EXPECT_TRUE(diff.is_zero()) << diff.dump();
}

TEST(HSigma, SigmaModMatchesRationalReduction) {
  const GF& Fp = GF::get(5, 1);
  QSeries s = sigma_q(100).s;
  FpSeries a = reduce_mod_p(s, Fp), b = sigma_q_mod(5, 100);
  for (long e = -1; e < 100; ++e) EXPECT_EQ(a.coeff(e), b.coeff(e)) << e;
}

class RhoM2Test : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    gen_ = new ASGenerator(solve_h_sigma_minimal(P5));
    rho_ = new RhoM2(GlobalParams::make(5, 2), *gen_);
  }
  static ASGenerator* gen_;
  static RhoM2* rho_;
};
ASGenerator* RhoM2Test::gen_ = nullptr;
RhoM2* RhoM2Test::rho_ = nullptr;

TEST_F(RhoM2Test, IdentityAndCompatibility) {
  const GF& k = P5.k();
  EXPECT_EQ(rho_->eval(gf_poly(k, {1})), 1u);
  EXPECT_EQ(rho_->conductor().degree(), 56);
  std::mt19937_64 rng(3);
  GFPoly f = p_sigma(P5);
  for (int i = 0; i < 50; ++i) {
    GFPoly x = random_coprime(f, 20, rng);
    EXPECT_EQ(rho_->eval(x) % 5, rho_->kummer().eval(x));
  }
}

TEST_F(RhoM2Test, Multiplicative) {
  std::mt19937_64 rng(4);
  GFPoly c = rho_->conductor();
  for (int i = 0; i < 200; ++i) {
    GFPoly x = random_coprime(c, 55, rng), y = random_coprime(c, 55, rng);
    EXPECT_EQ(rho_->eval((x * y) % c), rho_->eval(x) * rho_->eval(y) % 25);
  }
}

// The Artin-Schreier symbol of an unramified prime P is Tr(g mod P).
TEST_F(RhoM2Test, SymbolIsFrobeniusTrace) {
  const GF& k = P5.k();
  std::mt19937_64 rng(6);
  GFPoly f = p_sigma(P5);
  int checked = 0;
  while (checked < 30) {
    long d = 1 + static_cast<long>(rng() % 3);
    GFPoly P = random_irreducible(k, d, rng);
    if (poly_gcd(P, f).degree() > 0) continue;
    const GF& F = GF::get(5, d);
    Embedding e(k, F);
    GF::Code beta = roots_in(P, F).front();
    GFElem b(F, beta);
    GFElem g = embed_poly(gen_->h, e)(b) / embed_poly(f, e)(b).pow(gen_->l);
    EXPECT_EQ(rho_->as_symbol(P), F.trace(g.v)) << P.str();
    ++checked;
  }
}

TEST_F(RhoM2Test, Surjective) {
  std::mt19937_64 rng(8);
  std::set<std::uint64_t> seen;
  GFPoly f = p_sigma(P5);
  for (int i = 0; i < 300 && seen.size() < 20; ++i) seen.insert(rho_->eval(random_coprime(f, 12, rng)));
  EXPECT_EQ(seen.size(), 20u);
}
