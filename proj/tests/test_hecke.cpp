#include <gtest/gtest.h>

#include <complex>
#include <fstream>
#include <random>
#include <sstream>

#include "cuspann/hecke.hpp"

using namespace cuspann;

namespace {

const GlobalParams P5 = GlobalParams::make(5);

QSeries qs(std::vector<long> c, long prec = QSeries::kExact) {
  std::vector<Rational> r;
  for (long x : c) r.push_back(Rational(x));
  return QSeries(std::move(r), 0, 1, prec, Rational(0));
}

// rho through direct powering, independent of the Horner/log path used by
// the count tables.
RhoUnitFn powering_fn(const KummerRho& rho) {
  return [&rho](const GFPoly& x) -> std::optional<std::uint64_t> {
    for (const auto& P : rho.places())
      if ((x % P.pi).is_zero()) return std::nullopt;
    return rho.eval(x);
  };
}

struct Five {
  KummerModel M = KummerModel::build(P5);
  KummerRho rho{P5, M.f};
  RhoCountTable T = rho_count_table(rho, M.D + 1);
  RayModulus mod = RayModulus::make(M.f);
  AnnihilatorOp op = build_annihilator(P5, mod, powering_fn(rho));
  std::vector<FormRecord> fixtures = generate_fixtures(M);
};

const Five& five() {
  static Five f;
  return f;
}

FormRecord random_record(std::mt19937_64& rng, int order, const std::map<std::uint64_t, std::pair<int, long>>& neb, long M) {
  FormRecord f;
  f.label = "rand";
  f.order = order;
  f.nebentypus = neb;
  f.normalized = false;
  for (long n = 0; n < M; ++n) {
    std::vector<Integer> rep;
    for (int i = 0; i < euler_phi(order); ++i) rep.push_back(Integer(static_cast<long>(rng() % 11) - 5));
    f.coeffs.push_back(CycInt(order, rep));
  }
  return f;
}

std::map<std::uint64_t, std::pair<int, long>> chi_neb(unsigned b) {
  UnitGroup U = UnitGroup::make(5, 1);
  std::map<std::uint64_t, std::pair<int, long>> neb;
  for (std::uint64_t u = 1; u < 5; ++u) neb[u] = {4, static_cast<long>(b * U.log(u) % 4)};
  return neb;
}

}  // namespace

TEST(TpApply, Examples) {
  QSeries f = qs({0, 1, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3});
  EXPECT_EQ(tp_apply(f, 5), qs({0, 2, 0, 0, 0, 3}));
  EXPECT_EQ(tp_apply(qs({7}), 5), qs({7}));
  QSeries g = qs({1, 2}, 23);
  EXPECT_EQ(tp_apply(g, 5).prec(), 4);
  EXPECT_THROW(tp_apply(QSeries::monomial(Rational(1), 1, 4), 5), DomainError);
}

TEST(TpApply, PowerConvention) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long> c;
    for (int i = 0; i < 400; ++i) c.push_back(static_cast<long>(rng() % 9) - 4);
    QSeries f = qs(c, 400);
    EXPECT_EQ(tp_apply(tp_apply(f, 5), 5), tp_apply(f, 25));
  }
}

TEST(Annihilator, DegreeOneIsIdentity) {
  const GF& k = P5.k();
  KummerRho rho(P5, gf_x(k));
  auto op = build_annihilator(P5, RayModulus::make(gf_x(k)), kummer_rho_fn(rho));
  ASSERT_EQ(op.terms.size(), 1u);
  EXPECT_EQ(op.terms[0].u, 1u);
  EXPECT_EQ(op.terms[0].i, 0);
  EXPECT_EQ(op.terms[0].mult, 1u);
  std::mt19937_64 rng(3);
  FormRecord f = random_record(rng, 4, chi_neb(1), 30);
  auto r = apply_annihilator(op, f, 30);
  for (long j = 1; j <= 30; ++j) EXPECT_EQ(r.coeffs[j - 1], f.a(j));
}

TEST(Annihilator, DegreeTwoCounts) {
  const GF& k = P5.k();
  GFPoly q = gf_poly(k, {-2, 0, 1});  // sigma^2 - 2, irreducible over F_5
  KummerRho rho(P5, q);
  auto op = build_annihilator(P5, RayModulus::make(q), kummer_rho_fn(rho));
  EXPECT_EQ(op.total(0), 5u);
  EXPECT_EQ(op.total(1), 1u);
  EXPECT_EQ(op.dropped[0], 0u);
  EXPECT_TRUE(op.check_multiplicities());
}

TEST(Annihilator, MultiplicityInvariant) {
  const auto& F = five();
  EXPECT_TRUE(F.op.check_multiplicities());
  EXPECT_EQ(F.op.d, 8);
  // r divisible by a quartic factor of p_sigma: 2 * 5^3 of degree 7, one of degree 4
  EXPECT_EQ(F.op.dropped[0], 250u);
  EXPECT_EQ(F.op.dropped[3], 2u);
  auto loose = build_annihilator(P5, F.mod, kummer_rho_fn(F.rho), BetaConvention::Class, RamifiedPolicy::CoprimePart);
  EXPECT_TRUE(loose.check_multiplicities());
  for (long i = 0; i < loose.d; ++i) EXPECT_EQ(loose.dropped[i], 0u);
}

TEST(Annihilator, CoefficientsAreLCoefficients) {
  const auto& F = five();
  for (const auto& chi : all_characters(4)) {
    LPoly L = dirichlet_L(F.rho, F.T, chi);
    auto c = char_coeffs(F.op, chi.b);
    for (long i = 0; i < F.op.d; ++i) EXPECT_EQ(c[i], L.c[F.op.d - 1 - i]) << chi.label() << " i=" << i;
    if (!chi.trivial()) {
      CycPoly rev = L.poly().reversed(F.op.d - 1);
      ASSERT_EQ(rev.lead(), CycInt(4, 1L));
      EXPECT_TRUE((char_poly(F.op, chi.b) % rev).is_zero());
      EXPECT_EQ(char_scalar(F.op, chi.b, CycInt(4, 0L)), L.c[F.op.d - 1]);
    }
  }
}

TEST(Annihilator, InverseConventionConjugates) {
  const auto& F = five();
  auto inv = build_annihilator(P5, F.mod, kummer_rho_fn(F.rho), BetaConvention::Inverse);
  for (const auto& chi : all_characters(4, BetaConvention::Inverse)) {
    LPoly L = dirichlet_L(F.rho, F.T, chi);
    auto c = char_coeffs(inv, chi.b);
    for (long i = 0; i < inv.d; ++i) EXPECT_EQ(c[i], L.c[inv.d - 1 - i]);
  }
}

TEST(Annihilator, ScalarVanishesAtInverseRoots) {
  const auto& F = five();
  for (const auto& chi : all_characters(4)) {
    if (chi.trivial()) continue;
    LPoly L = dirichlet_L(F.rho, F.T, chi);
    CycPoly P = L.poly();
    // exact: even characters carry the inverse root 1
    if (L.even) EXPECT_TRUE(char_scalar(F.op, chi.b, CycInt(4, 1L)).is_zero());
    auto cs = char_coeffs(F.op, chi.b);
    for (auto a : inverse_roots(P)) {
      std::complex<double> s = 0, pw = 1;
      for (const auto& ci : cs) {
        s += ci.to_complex() * pw;
        pw *= a;
      }
      EXPECT_LT(std::abs(s), 1e-6 * std::pow(5.0, 4));
    }
  }
}

TEST(Annihilator, CoprimePartPolicyBreaksIdentity) {
  const auto& F = five();
  auto loose = build_annihilator(P5, F.mod, kummer_rho_fn(F.rho), BetaConvention::Class, RamifiedPolicy::CoprimePart);
  bool all_match = true;
  for (const auto& chi : all_characters(4)) {
    LPoly L = dirichlet_L(F.rho, F.T, chi);
    auto c = char_coeffs(loose, chi.b);
    for (long i = 0; i < loose.d; ++i)
      if (!(c[i] == L.c[loose.d - 1 - i])) all_match = false;
  }
  EXPECT_FALSE(all_match);
}

TEST(Annihilator, ThirteenLowDegrees) {
  const GlobalParams P13 = GlobalParams::make(13);
  KummerModel M = KummerModel::build(P13);
  KummerRho rho(P13, M.f);
  RayModulus mod = RayModulus::make(M.f);
  auto op = build_annihilator(P13, mod, powering_fn(rho), BetaConvention::Class, RamifiedPolicy::Strict, 3);
  EXPECT_TRUE(op.truncated());
  EXPECT_TRUE(op.check_multiplicities());
  auto T = rho_count_table(rho, 3);
  for (const auto& chi : all_characters(12)) {
    auto c = char_coeffs(op, chi.b);
    for (long j = 0; j <= 3; ++j) {
      CycInt s(12, 0L);
      for (unsigned e = 0; e < 12; ++e) s += chi.value_at_log(e) * CycInt(12, Integer(static_cast<unsigned long>(T.cnt[j][e])));
      EXPECT_EQ(c[op.d - 1 - j], s) << chi.label() << " deg " << j;
    }
  }
  EXPECT_THROW(build_annihilator(P13, mod, powering_fn(rho)), ScaleError);
}

TEST(Forms, FixturesVanishModP) {
  const auto& F = five();
  ASSERT_FALSE(F.fixtures.empty());
  for (const auto& f : F.fixtures) {
    auto r = apply_annihilator(F.op, f, 200);
    EXPECT_TRUE(r.report.zero_mod_p) << r.report.str();
    EXPECT_EQ(r.report.largest_exponent, 200);
  }
}

TEST(Forms, EigenformScalar) {
  const auto& F = five();
  for (const auto& f : F.fixtures) {
    unsigned b = static_cast<unsigned>(f.nebentypus.at(2).second);
    CycInt s = char_scalar(F.op, b, *f.eigen_ap);
    auto r = apply_annihilator(F.op, f, 60);
    for (long j = 1; j <= 60; ++j) EXPECT_EQ(r.coeffs[j - 1].embed(s.order()), s * f.a(j).embed(s.order()));
  }
}

TEST(Forms, RandomRecordNotAnnihilated) {
  const auto& F = five();
  std::mt19937_64 rng(11);
  FormRecord f = random_record(rng, 4, chi_neb(1), 20);
  f.eigen_ap = CycInt(4, 3L);
  auto r = apply_annihilator(F.op, f, 20);
  EXPECT_FALSE(r.report.zero_exact);
}

TEST(Forms, Additivity) {
  const GF& k = P5.k();
  GFPoly q = gf_poly(k, {-2, 0, 1});
  KummerRho rho(P5, q);
  auto op = build_annihilator(P5, RayModulus::make(q), kummer_rho_fn(rho));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto neb = chi_neb(static_cast<unsigned>(rng() % 4));
    FormRecord a = random_record(rng, 4, neb, 250), b = random_record(rng, 4, neb, 250);
    auto ra = apply_annihilator(op, a, 50), rb = apply_annihilator(op, b, 50);
    auto rs = apply_annihilator(op, add_forms(a, b, 250), 50);
    for (long j = 0; j < 50; ++j) EXPECT_EQ(rs.coeffs[j], ra.coeffs[j] + rb.coeffs[j]);
  }
}

TEST(Forms, InsufficientCoefficients) {
  const auto& F = five();
  std::mt19937_64 rng(1);
  FormRecord f = random_record(rng, 4, chi_neb(1), 100);
  try {
    apply_annihilator(F.op, f, 10);
    FAIL() << "expected PrecisionError";
  } catch (const PrecisionError& e) {
    EXPECT_NE(std::string(e.what()).find("781250"), std::string::npos) << e.what();
  }
}

TEST(Forms, JsonRoundTripAndValidation) {
  const auto& F = five();
  std::string text = write_forms(F.fixtures);
  auto j = nlohmann::json::parse(text);
  std::vector<FormRecord> back;
  for (const auto& x : j.at("forms")) back.push_back(form_from_json(x));
  EXPECT_EQ(write_forms(back), text);
  auto bad = j.at("forms").at(0);
  bad["weight"] = 4;
  EXPECT_THROW(form_from_json(bad), DomainError);
  bad = j.at("forms").at(0);
  bad["nebentypus"]["2"] = {4, 1};
  bad["nebentypus"]["3"] = {4, 1};
  EXPECT_THROW(form_from_json(bad), DomainError);
  bad = j.at("forms").at(0);
  bad.erase("coeffs");
  EXPECT_THROW(form_from_json(bad), DomainError);
}

TEST(Forms, ShippedFixturesMatchGenerator) {
  const auto& F = five();
  EXPECT_EQ(write_forms(F.fixtures), write_forms(generate_fixtures(F.M)));
  std::ifstream in(std::string(CUSPANN_DATA_DIR) + "/fixtures_p5_m1.json");
  ASSERT_TRUE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), write_forms(F.fixtures));
}
