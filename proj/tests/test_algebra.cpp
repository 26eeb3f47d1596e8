#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cuspann/cyclotomic.hpp"
#include "cuspann/dual.hpp"
#include "cuspann/monic.hpp"
#include "cuspann/ntt.hpp"
#include "cuspann/params.hpp"
#include "cuspann/poly_factor.hpp"
#include "cuspann/series.hpp"

using namespace cuspann;

using QS = FracSeries<Rational>;

namespace {

QS qseries(std::vector<long> c, long val = 0, long den = 1, long prec = QS::kExact) {
  std::vector<Rational> r;
  for (long x : c) r.push_back(Rational(x));
  return QS(r, val, den, prec, Rational(0));
}

// binom(1/2, k) computed from the product formula.
Rational half_binom(long k) {
  Rational r(1);
  for (long j = 0; j < k; ++j) r *= (Rational(1, 2) - j) / Rational(j + 1);
  return r;
}

}  // namespace

TEST(GlobalParams, DeltaRule) {
  EXPECT_EQ(GlobalParams::make(5).delta, 1u);
  EXPECT_EQ(GlobalParams::make(13).delta, 1u);
  EXPECT_EQ(GlobalParams::make(7).delta, 2u);
  EXPECT_EQ(GlobalParams::make(7).k_order, 49u);
  EXPECT_THROW(GlobalParams::make(3), DomainError);
  EXPECT_THROW(GlobalParams::make(2), DomainError);
  EXPECT_THROW(GlobalParams::make(9), DomainError);
}

TEST(FiniteField, AxiomsAndDeterminism) {
  for (auto [p, n] : std::vector<std::pair<int, int>>{{5, 1}, {5, 2}, {7, 2}, {5, 4}, {13, 2}, {3, 5}}) {
    const GF& F = GF::get(p, n);
    EXPECT_EQ(&F, &GF::get(p, n));
    std::mt19937 rng(p * 100 + n);
    for (int t = 0; t < 300; ++t) {
      GF::Code a = rng() % F.q(), b = rng() % F.q(), c = rng() % F.q();
      EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
      EXPECT_EQ(F.add(a, F.neg(a)), 0u);
      if (a) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
      EXPECT_EQ(F.pow(a, F.q()), a);
      EXPECT_EQ(F.frob(F.add(a, b)), F.add(F.frob(a), F.frob(b)));
      EXPECT_LT(F.trace(a), static_cast<GF::Code>(p));
    }
    // gen() has full order
    auto fs = prime_factors(F.q() - 1);
    for (auto f : fs) EXPECT_NE(F.pow(F.gen(), (F.q() - 1) / f), 1u);
  }
  EXPECT_EQ(GF::get(5, 1).gen(), 2u);
}

TEST(FiniteField, EmbeddingIsHomomorphism) {
  const GF& s = GF::get(5, 2);
  const GF& b = GF::get(5, 4);
  Embedding e(s, b);
  for (GF::Code x = 0; x < s.q(); ++x)
    for (GF::Code y = 0; y < s.q(); y += 3) {
      EXPECT_EQ(e(s.mul(x, y)), b.mul(e(x), e(y)));
      EXPECT_EQ(e(s.add(x, y)), b.add(e(x), e(y)));
    }
  EXPECT_EQ(e.preimage(e(7)).value(), 7u);
}

TEST(MonicEnum, SpecExamples) {
  const GF& F5 = GF::get(5, 1);
  auto e0 = monic_enum(F5, 0);
  auto f = e0.next();
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->degree(), 0);
  EXPECT_EQ(f->coeff(0).v, 1u);
  EXPECT_FALSE(e0.next().has_value());

  auto e1 = monic_enum(F5, 1);
  std::set<GF::Code> consts;
  while (auto g = e1.next()) {
    EXPECT_EQ(g->degree(), 1);
    consts.insert(g->coeff(0).v);
  }
  EXPECT_EQ(consts.size(), 5u);

  const GF& F49 = GF::get(7, 2);
  auto e2 = monic_enum(F49, 2);
  std::set<std::vector<GF::Code>> seen;
  while (auto g = e2.next()) seen.insert(codes_of(*g));
  EXPECT_EQ(seen.size(), 2401u);

  auto neg = monic_enum(F5, -1);
  EXPECT_FALSE(neg.next().has_value());
}

TEST(MonicEnum, CardinalityNoDuplicates) {
  for (int q : {5, 7}) {
    const GF& F = GF::get(q, 1);
    for (int d = 0; d <= 3; ++d) {
      auto e = monic_enum(F, d);
      std::set<std::vector<GF::Code>> seen;
      std::size_t count = 0;
      while (auto g = e.next()) {
        EXPECT_EQ(g->degree(), d);
        EXPECT_EQ(g->lead().v, 1u);
        seen.insert(codes_of(*g));
        ++count;
      }
      EXPECT_EQ(count, ipow(q, d));
      EXPECT_EQ(seen.size(), count);
    }
  }
}

TEST(Series, SqrtBinomial) {
  // y^2 - (1 + 4u) = 0 from seed 1
  std::vector<QS> F = {qseries({-1, -4}), QS(Rational(0), 1), qseries({1})};
  QS s = series_solve(F, qseries({1}), 12);
  EXPECT_EQ(s.prec(), 12);
  for (long k = 0; k < 12; ++k) {
    Rational four_k = 1;
    for (long j = 0; j < k; ++j) four_k *= 4;
    EXPECT_EQ(s.coeff(k), half_binom(k) * four_k) << "k=" << k;
  }
  EXPECT_EQ(s.coeff(1), 2);
  EXPECT_EQ(s.coeff(2), -2);
  EXPECT_EQ(s.coeff(3), 4);
  // idempotent under re-solving
  QS s2 = series_solve(F, s, 12);
  EXPECT_TRUE(QS::agree(s, s2));
}

TEST(Series, ConstantAndGeometric) {
  std::vector<QS> F = {qseries({-7}), qseries({1})};
  QS s = series_solve(F, qseries({3}), 20);
  EXPECT_EQ(s.coeff(0), 7);
  for (long k = 1; k < 20; ++k) EXPECT_EQ(s.coeff(k), 0);

  // y(1+u) - 1 = 0
  std::vector<QS> G = {qseries({-1}), qseries({1, 1})};
  QS g = series_solve(G, qseries({1}), 15);
  for (long k = 0; k < 15; ++k) EXPECT_EQ(g.coeff(k), (k % 2 ? -1 : 1));
}

TEST(Series, SingularSeed) {
  // y^2 = u has derivative 2y = 0 at seed 0
  std::vector<QS> F = {qseries({0, -1}), QS(Rational(0), 1), qseries({1})};
  EXPECT_THROW(series_solve(F, QS(Rational(0), 1), 10), SingularSeed);
}

TEST(Series, RandomQuadraticRelationsOverQ) {
  std::mt19937 rng(42);
  for (int t = 0; t < 100; ++t) {
    std::vector<long> a(8), b(8);
    for (auto& x : a) x = static_cast<long>(rng() % 9) - 4;
    for (auto& x : b) x = static_cast<long>(rng() % 9) - 4;
    a[0] = 1 + rng() % 3;
    b[0] = -(1 + static_cast<long>(rng() % 3));
    QS r0 = qseries(a), r1 = qseries(b);
    // (y - r0)(y - r1) = y^2 - (r0 + r1) y + r0 r1
    std::vector<QS> F = {r0 * r1, -(r0 + r1), qseries({1})};
    QS s = series_solve(F, qseries({a[0]}), 16);
    QS resid = (s * s + F[1] * s + F[0]).truncate(16);
    EXPECT_TRUE(resid.is_zero());
    EXPECT_TRUE(QS::agree(s, r0.truncate(16)));
  }
}

TEST(Series, RandomQuadraticRelationsOverFp) {
  const GF& F = GF::get(7, 1);
  using S = FracSeries<GFElem>;
  std::mt19937 rng(7);
  GFElem z(F, 0);
  for (int t = 0; t < 100; ++t) {
    std::vector<GFElem> a, b;
    for (int i = 0; i < 10; ++i) {
      a.push_back(GFElem(F, rng() % 7));
      b.push_back(GFElem(F, rng() % 7));
    }
    a[0] = GFElem(F, 1 + rng() % 3);
    b[0] = GFElem(F, 4 + rng() % 3);
    S r0(a, 0, 4, S::kExact, z), r1(b, 0, 4, S::kExact, z);
    std::vector<S> Fr = {r0 * r1, -(r0 + r1), S::constant(GFElem(F, 1), 4)};
    S s = series_solve(Fr, S::constant(a[0], 4), 30);
    S resid = (s * s + Fr[1] * s + Fr[0]).truncate(30);
    EXPECT_TRUE(resid.is_zero());
  }
}

TEST(Series, MulDivRoundTrip) {
  std::mt19937 rng(1);
  for (int t = 0; t < 50; ++t) {
    std::vector<long> a(20), b(20);
    for (auto& x : a) x = static_cast<long>(rng() % 21) - 10;
    for (auto& x : b) x = static_cast<long>(rng() % 21) - 10;
    b[0] = (rng() % 2) ? 3 : -2;
    long va = static_cast<long>(rng() % 5) - 2, vb = static_cast<long>(rng() % 5) - 2;
    QS f = qseries(a, va, 2, va + 20), g = qseries(b, vb, 2, vb + 20);
    QS h = (f * g) / g;
    EXPECT_TRUE(QS::agree(h, f));
    EXPECT_LE(h.prec(), f.prec());
  }
}

TEST(Series, MixedDenominatorsRescale) {
  QS a = qseries({1, 1}, 0, 2, 10);  // 1 + q^{1/2}
  QS b = qseries({1, 1}, 0, 3, 10);  // 1 + q^{1/3}
  QS c = a * b;
  EXPECT_EQ(c.den(), 6);
  EXPECT_EQ(c.coeff(5), 1);  // q^{5/6}
  EXPECT_EQ(c.coeff(3), 1);
  EXPECT_EQ(c.coeff(2), 1);
  EXPECT_EQ(c.coeff(1), 0);
}

TEST(Series, PessimisticTruncation) {
  QS a = qseries({1, 2, 3}, 0, 1, 3);
  QS b = qseries({5}, -2, 1, 1);  // 5 q^{-2} + O(q)
  QS c = a * b;
  EXPECT_EQ(c.prec(), 1);  // min(3 - 2, 1 + 0)
  EXPECT_THROW(c.coeff(1), PrecisionError);
}

TEST(CycInt, SpecExamples) {
  CycInt z4 = CycInt::zeta_pow(4, 1);
  EXPECT_EQ(z4 * z4, CycInt(4, -1L));
  EXPECT_TRUE((z4 + z4.conj()).is_zero());
  CycInt one_minus = CycInt(5, 1L) - CycInt::zeta_pow(5, 1);
  EXPECT_EQ(one_minus.norm(), 5);
  EXPECT_THROW(CycInt::zeta_pow(4, 1) + CycInt::zeta_pow(3, 1), DomainError);
  EXPECT_EQ(CycInt::zeta_pow(3, 1) + CycInt(4, 2L), CycInt::zeta_pow(3, 1) + CycInt(3, 2L));
}

TEST(CycInt, FloatingEmbeddingSanity) {
  std::mt19937 rng(3);
  for (int n : {3, 4, 5, 8, 12, 15, 20}) {
    for (int t = 0; t < 20; ++t) {
      std::vector<Integer> ra, rb;
      for (int i = 0; i < n; ++i) {
        ra.push_back(static_cast<long>(rng() % 11) - 5);
        rb.push_back(static_cast<long>(rng() % 11) - 5);
      }
      CycInt a(n, ra), b(n, rb);
      auto exact = (a * b).to_complex();
      auto approx = a.to_complex() * b.to_complex();
      double scale = std::max(1.0, std::abs(approx));
      EXPECT_LT(std::abs(exact - approx) / scale, 1e-9);
    }
  }
}

TEST(CycInt, UnitInverse) {
  CycInt z = CycInt::zeta_pow(12, 5);
  EXPECT_EQ(z * ring_inverse(z), CycInt(12, 1L));
}

TEST(DualNumber, Rules) {
  using D = DualNumber<Rational>;
  D x(Rational(2), Rational(3)), y(Rational(5), Rational(7));
  D xy = x * y;
  EXPECT_EQ(xy.re, 10);
  EXPECT_EQ(xy.eps, 2 * 7 + 3 * 5);
  D xi = x.inverse();
  D one = x * xi;
  EXPECT_EQ(one.re, 1);
  EXPECT_EQ(one.eps, 0);
  EXPECT_FALSE(D(Rational(0), Rational(1)).is_unit());
}

TEST(Factor, ProductAndIrreducibility) {
  const GF& F = GF::get(5, 1);
  std::mt19937 rng(11);
  for (int t = 0; t < 40; ++t) {
    std::vector<long> c(1 + rng() % 9);
    for (auto& x : c) x = rng() % 5;
    c.push_back(1);
    GFPoly f = gf_poly(F, c);
    auto fs = factor(f);
    GFPoly prod = GFPoly::constant(GFElem(F, 1));
    for (const auto& fa : fs) {
      prod = prod * fa.f.pow(fa.mult);
      if (fa.f.degree() >= 2 && fa.f.degree() <= 3)
        for (GF::Code a = 0; a < 5; ++a) EXPECT_NE(fa.f(GFElem(F, a)).v, 0u);
    }
    EXPECT_EQ(prod, f.monic());
  }
  // x^5 - x splits into linear factors
  auto lin = factor(gf_poly(F, {0, -1, 0, 0, 0, 1}));
  EXPECT_EQ(lin.size(), 5u);
  // square detection
  GFPoly sq = gf_poly(F, {1, 1}).pow(2) * gf_poly(F, {2, 0, 1});
  auto fs = factor(sq);
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_EQ(fs[0].mult, 2);
  EXPECT_FALSE(is_squarefree(sq));
}

TEST(Ntt, MatchesSchoolbook) {
  std::mt19937 rng(5);
  std::vector<std::uint32_t> a(3000), b(2500);
  for (auto& x : a) x = rng() % 5;
  for (auto& x : b) x = rng() % 5;
  auto c = convolve_mod(a, b, 5);
  std::vector<std::uint32_t> d(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) d[i + j] = (d[i + j] + a[i] * b[j]) % 5;
  EXPECT_EQ(c, d);
}
