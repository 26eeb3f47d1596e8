#include <cctype>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cuspann/cuspann.hpp"

using namespace cuspann;
using ojson = nlohmann::ordered_json;

namespace {

struct Report {
  ojson data = ojson::object();
  std::string text;
  int status = 0;

  void line(const std::string& s) { text += s + "\n"; }
};

std::string superscript(long e) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s;
  for (char c : std::to_string(e)) s += digits[c - '0'];
  return s;
}

// Descending terms, unit coefficients dropped: "λ² + 4λ + 1".
std::string pretty(const GFPoly& f, const std::string& var) {
  if (f.is_zero()) return "0";
  std::string s;
  for (long i = f.degree(); i >= 0; --i) {
    const GFElem c = f.coeff(i);
    if (c.is_zero()) continue;
    std::string cs = c.F->str(c.v);
    if (!s.empty()) s += " + ";
    if (i == 0) s += cs;
    else s += (cs == "1" ? "" : cs) + var + (i > 1 ? superscript(i) : "");
  }
  return s;
}

std::string join(const std::vector<std::string>& v, const std::string& sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

template <class R>
std::vector<std::string> coeff_strs(const Poly<R>& f) {
  std::vector<std::string> v;
  for (long i = 0; i <= f.degree(); ++i) v.push_back(ring_str(f.coeff(i)));
  return v;
}

std::vector<std::string> int_strs(const std::vector<Integer>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

std::vector<std::string> dump_lines(const std::string& dump) {
  std::vector<std::string> out;
  std::istringstream is(dump);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

// "s^3 + 2*s + 1" (variable s or sigma, integer coefficients) over k.
GFPoly parse_poly(std::string src, const GF& k) {
  std::string s;
  for (char c : src)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  for (std::size_t pos; (pos = s.find("sigma")) != std::string::npos;) s.replace(pos, 5, "s");
  if (s.empty()) throw DomainError("cli", "empty polynomial");
  std::map<long, long> acc;
  std::size_t i = 0;
  auto number = [&](long& out) {
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) return false;
    out = std::stol(s.substr(i, j - i));
    i = j;
    return true;
  };
  while (i < s.size()) {
    long sign = 1;
    if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
    long c = 1, e = 0;
    bool has_c = number(c);
    if (i < s.size() && s[i] == '*') {
      if (!has_c) throw DomainError("cli", "malformed polynomial '" + src + "'");
      ++i;
    }
    if (i < s.size() && s[i] == 's') {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (!number(e)) throw DomainError("cli", "malformed exponent in '" + src + "'");
      }
    } else if (!has_c) {
      throw DomainError("cli", "malformed polynomial '" + src + "'");
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw DomainError("cli", "unexpected '" + std::string(1, s[i]) + "' in '" + src + "'");
    acc[e] += sign * c;
  }
  std::vector<long> coeffs(acc.rbegin()->first + 1, 0);
  for (auto [e, c] : acc) coeffs[e] = c;
  return gf_poly(k, coeffs);
}

// ---------------------------------------------------------------------------

Report cmd_deuring(const RunConfig& cfg) {
  Report R;
  GFPoly H = deuring_poly(cfg.p);
  const GF& F2 = GF::get(cfg.p, 2);
  auto fs = factor(embed_poly(H, Embedding(GF::get(cfg.p, 1), F2)));
  std::vector<std::string> roots;
  for (auto r : roots_in(H, F2)) roots.push_back(F2.str(r));
  R.line("H(λ) = " + pretty(H, "λ"));
  R.line("factorization over F_" + std::to_string(F2.q()) + ": " + factor_pattern(fs));
  R.line("supersingular λ: " + join(roots));
  R.data["H"] = pretty(H, "λ");
  R.data["coefficients"] = coeff_strs(H);
  R.data["factorization"] = factor_pattern(fs);
  R.data["roots"] = roots;
  return R;
}

Report cmd_eisenstein(const RunConfig& cfg, long weight, long theta_k, bool reduce, bool as_rhs_mode) {
  Report R;
  std::string dump;
  if (as_rhs_mode) {
    long T = cfg.terms ? cfg.terms : as_rhs_min_terms(cfg.p);
    dump = as_rhs(cfg.params(), T).dump();
    R.data["series"] = "theta^" + std::to_string(cfg.p - 2) + "(E_" + std::to_string(cfg.p + 1) + ") / E_" + std::to_string(cfg.p - 1) + "^3 mod " + std::to_string(cfg.p);
  } else {
    long T = cfg.terms ? cfg.terms : 20;
    QSeries f = eisenstein_series(weight, T).f;
    for (long i = 0; i < theta_k; ++i) f = f.theta();
    dump = reduce ? reduce_mod_p(f, GF::get(cfg.p, 1)).dump() : f.dump();
    R.data["series"] = "theta^" + std::to_string(theta_k) + "(E_" + std::to_string(weight) + ")" + (reduce ? " mod " + std::to_string(cfg.p) : "");
  }
  R.line("# " + R.data["series"].get<std::string>());
  R.text += dump;
  R.data["terms"] = dump_lines(dump);
  return R;
}

Report cmd_as_generator(const RunConfig& cfg, long l, bool minimal) {
  Report R;
  GlobalParams P = GlobalParams::make(cfg.p);
  ASGenerator g = minimal ? solve_h_sigma_minimal(P, cfg.terms, -1, cfg.map()) : solve_h_sigma(P, cfg.terms, l, cfg.map());
  R.line("l = " + std::to_string(g.l));
  R.line("h(σ) = " + pretty(g.h, "σ"));
  R.line("deg h = " + std::to_string(g.h.degree()));
  R.line("certificate: " + std::to_string(g.equations) + " coefficients, " + std::to_string(g.unknowns) + " unknowns, " + std::to_string(g.certificate) +
         " beyond; precision q^" + std::to_string(g.prec_u) + "/4");
  R.data["l"] = g.l;
  R.data["h"] = coeff_strs(g.h);
  R.data["equations"] = g.equations;
  R.data["unknowns"] = g.unknowns;
  R.data["certificate"] = g.certificate;
  R.data["precision"] = std::to_string(g.prec_u) + "/4";
  return R;
}

Report cmd_rho(const RunConfig& cfg, const std::string& expr) {
  Report R;
  GlobalParams P = cfg.params();
  GFPoly x = parse_poly(expr, P.k());
  std::uint64_t v = 0, mod = P.pm();
  if (cfg.m == 1) {
    v = KummerRho(P, p_sigma(P, cfg.map())).eval(x);
  } else if (cfg.m == 2) {
    RhoM2 rho(P, solve_h_sigma_minimal(GlobalParams::make(cfg.p), 0, -1, cfg.map()), cfg.map());
    v = rho.eval(x);
    R.line("conductor degree " + std::to_string(rho.conductor().degree()));
    R.data["conductor_degree"] = rho.conductor().degree();
  } else {
    throw DomainError("classfield", "rho is implemented for m = 1 and m = 2");
  }
  R.line("rho(" + x.str("s") + ") = " + std::to_string(v) + " mod " + std::to_string(mod));
  R.data["argument"] = x.str("s");
  R.data["value"] = v;
  R.data["modulus"] = mod;
  return R;
}

Report cmd_lfunction(const RunConfig& cfg) {
  Report R;
  if (cfg.m != 1) throw ScaleError("lfunction", "L-functions for m = 2 need the degree-" + std::to_string(7 * 2 * (cfg.p - 1)) + " conductor");
  KummerModel M = KummerModel::build(cfg.params(), cfg.map());
  KummerRho rho(M.params, M.f);
  RhoCountTable T = rho_count_table(rho, M.D + 2, cfg.workers);
  R.data["L"] = ojson::array();
  for (const auto& chi : all_characters(rho.n(), cfg.beta)) {
    LPoly L = dirichlet_L(rho, T, chi);
    std::vector<std::string> c;
    for (long j = 0; j <= L.stab_degree; ++j) c.push_back(L.c[j].str());
    R.line(chi.label() + " (degree " + std::to_string(L.stab_degree) + ", checked to t^" + std::to_string(L.checked) + "): " + join(c));
    R.data["L"].push_back({{"character", chi.label()}, {"degree", L.stab_degree}, {"checked", L.checked}, {"coefficients", c}});
  }
  return R;
}

Report cmd_zeta(const RunConfig& cfg, const std::string& method, unsigned r) {
  Report R;
  KummerModel M = KummerModel::build(cfg.params(), cfg.map());
  std::optional<ZetaFunction> Z;
  std::optional<CountTable> C;
  if (method != "counts") {
    Z = zeta_assemble(M, cfg.beta, -1, cfg.workers);
    R.line("characters: numerator " + join(coeff_strs(Z->numerator)));
    R.line("characters: denominator " + join(coeff_strs(Z->denominator)));
    R.line("characters: genus " + std::to_string(Z->genus));
    R.data["characters"] = {{"numerator", coeff_strs(Z->numerator)}, {"denominator", coeff_strs(Z->denominator)}, {"genus", Z->genus}};
  }
  if (method != "characters") {
    C = kummer_sweep(M, r, cfg.workers);
    auto P = zeta_from_counts(*C);
    R.line("counts: N_1..N_" + std::to_string(r) + " " + join(int_strs(C->N)));
    R.line("counts: numerator t^0..t^" + std::to_string(r) + " " + join(int_strs(P)));
    R.data["counts"] = {{"N", int_strs(C->N)}, {"numerator_prefix", int_strs(P)}};
  }
  if (Z && C) {
    auto pred = Z->counts(r);
    std::string verdict = "AGREE n=1.." + std::to_string(r);
    for (unsigned n = 0; n < r; ++n)
      if (pred[n] != C->N[n]) {
        verdict = "DISAGREE n=" + std::to_string(n + 1) + ": predicted " + pred[n].get_str() + ", counted " + C->N[n].get_str();
        R.status = 1;
        break;
      }
    R.line(verdict);
    R.data["agreement"] = verdict;
  }
  return R;
}

Report cmd_count(const RunConfig& cfg, unsigned n, bool sweep) {
  Report R;
  if (cfg.m != 1) throw DomainError("curve-oracle", "point counts are implemented for the m = 1 Kummer curve");
  KummerModel M = KummerModel::build(cfg.params(), cfg.map());
  if (sweep) {
    CountTable C = kummer_sweep(M, n, cfg.workers);
    for (unsigned i = 0; i < n; ++i) R.line("N_" + std::to_string(i + 1) + " = " + C.N[i].get_str());
    R.data["q"] = C.q;
    R.data["N"] = int_strs(C.N);
  } else {
    Integer N = kummer_count(M, n, cfg.workers);
    R.line("N_" + std::to_string(n) + " = " + N.get_str());
    R.data["n"] = n;
    R.data["N"] = N.get_str();
  }
  return R;
}

AnnihilatorOp annihilator_for(const RunConfig& cfg, std::unique_ptr<KummerRho>& k1, std::unique_ptr<RhoM2>& k2) {
  GlobalParams P = cfg.params();
  if (cfg.m == 1) {
    k1 = std::make_unique<KummerRho>(P, p_sigma(P, cfg.map()));
    return build_annihilator(P, RayModulus::make(k1->modulus()), kummer_rho_fn(*k1), cfg.beta, cfg.policy, -1, cfg.workers);
  }
  if (cfg.m != 2) throw DomainError("hecke", "annihilators are implemented for m = 1 and m = 2");
  k2 = std::make_unique<RhoM2>(P, solve_h_sigma_minimal(GlobalParams::make(cfg.p), 0, -1, cfg.map()), cfg.map());
  const RhoM2* rho = k2.get();
  RhoUnitFn fn = [rho](const GFPoly& x) -> std::optional<std::uint64_t> {
    try {
      return rho->eval(x);
    } catch (const RamifiedPlace&) {
      return std::nullopt;
    }
  };
  return build_annihilator(P, RayModulus::make(k2->conductor()), fn, cfg.beta, cfg.policy, -1, cfg.workers);
}

Report cmd_annihilate(const RunConfig& cfg, const std::string& path) {
  Report R;
  std::unique_ptr<KummerRho> k1;
  std::unique_ptr<RhoM2> k2;
  AnnihilatorOp op = annihilator_for(cfg, k1, k2);
  long prec = cfg.terms ? cfg.terms : 200;
  auto forms = read_forms(path);
  R.line("operator: degree " + std::to_string(op.d) + ", " + std::to_string(op.term_count()) + " terms");
  R.data["operator_terms"] = op.term_count();
  R.data["reports"] = ojson::array();
  for (const auto& f : forms) {
    VanishingReport v = apply_annihilator(op, f, prec).report;
    R.line(v.str());
    R.data["reports"].push_back({{"label", v.label},
                                 {"largest_exponent", v.largest_exponent},
                                 {"zero_mod_p", v.zero_mod_p},
                                 {"zero_exact", v.zero_exact},
                                 {"first_nonzero_mod_p", v.first_nonzero_mod_p}});
    if (!v.zero_mod_p) R.status = 1;
  }
  return R;
}

Report cmd_principal_part(const RunConfig& cfg, bool verify, bool solve) {
  Report R;
  std::unique_ptr<KummerRho> k1;
  std::unique_ptr<RhoM2> k2;
  AnnihilatorOp op = annihilator_for(cfg, k1, k2);
  PrincipalPartDescriptor D = principal_descriptor(cfg.params(), op);
  R.text += D.str();
  R.data["base"] = D.base;
  R.data["terms"] = ojson::array();
  for (const auto& t : D.terms) R.data["terms"].push_back({{"mult", t.mult}, {"exponent", t.exponent}, {"twist", t.twist}, {"i", t.i}});
  if (!verify && !solve) return R;
  KummerModel M = KummerModel::build(cfg.params(), cfg.map());
  CuspExpansions X = cusp_expansions(M, max_exponent(D));
  DualityResult res = duality_check_and_solve(D, X, solve);
  std::vector<std::string> basis, defect;
  for (const auto& h : X.basis) basis.push_back("sigma^" + std::to_string(h.a) + " dsigma/y^" + std::to_string(h.b));
  for (auto c : res.defect) defect.push_back(std::to_string(c));
  R.line("pairing basis: " + join(basis, ", "));
  R.line("defect: " + join(defect));
  R.data["basis"] = basis;
  R.data["defect"] = defect;
  if (!res.zero) R.status = 1;
  if (solve) {
    if (!res.solution) {
      R.line("solve: no element (defect nonzero or system inconsistent)");
      R.status = 1;
    } else {
      const MLSolution& S = *res.solution;
      R.line("spanning set: " + S.spanning_set());
      ojson coeffs = ojson::array();
      for (std::size_t b = 0; b < S.P.size(); ++b)
        for (long a = 0; a <= S.P[b].degree(); ++a) {
          GFElem c = S.P[b].coeff(a);
          if (c.is_zero()) continue;
          R.line("sigma^" + std::to_string(a) + " y^" + std::to_string(b) + " " + c.F->str(c.v));
          coeffs.push_back({{"a", a}, {"b", b}, {"coeff", c.F->str(c.v)}});
        }
      R.line(S.verified ? "verified: principal parts reproduced" : "verified: FAILED");
      R.data["solution"] = {{"spanning_set", S.spanning_set()}, {"coefficients", coeffs}, {"verified", S.verified}};
      if (!S.verified) R.status = 1;
    }
  }
  return R;
}

Report cmd_selftest(const RunConfig& cfg, const std::string& fixtures, std::uint64_t seed, bool stream) {
  Report R;
  R.data["criteria"] = ojson::array();
  auto results = run_acceptance(fixtures, seed, cfg.workers, [&](const CheckResult& r) {
    if (stream) std::cout << format_result(r, false) << std::endl;
  });
  for (const auto& r : results) {
    if (!stream) R.line(format_result(r, false));
    R.data["criteria"].push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    if (!r.pass) R.status = 1;
  }
  return R;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cuspidal annihilators and their function-field counterparts"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string beta = "class", sign = "-1", policy = "strict", format = "text";
  app.add_option("--p", cfg.p, "prime p >= 5")->capture_default_str();
  app.add_option("--m", cfg.m, "level exponent m")->capture_default_str();
  app.add_option("--terms,--prec", cfg.terms, "precision target (0: command default)")->capture_default_str();
  app.add_option("--beta", beta, "reciprocity convention")->check(CLI::IsMember({"class", "inverse"}))->capture_default_str();
  app.add_option("--residue-sign", sign, "dlog residue sign against the kernel oracle")->check(CLI::IsMember({"-1", "+1"}))->capture_default_str();
  app.add_option("--lambda-map", cfg.lambda_map, "lambda(sigma) map")->check(CLI::IsMember({"literal", "square"}))->capture_default_str();
  app.add_option("--ramified", policy, "ramified-term policy")->check(CLI::IsMember({"strict", "coprime-part"}))->capture_default_str();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--workers", cfg.workers, "worker threads (default: ANNIHILATOR_WORKERS or 1)")->check(CLI::Range(1, 256));

  auto* deuring = app.add_subcommand("deuring", "Deuring polynomial and its factorization over F_{p^2}");

  long weight = 4, theta_k = 0;
  bool reduce = false, rhs = false;
  auto* eis = app.add_subcommand("eisenstein", "dump an Eisenstein q-expansion");
  eis->add_option("--weight", weight, "even weight >= 4")->capture_default_str();
  eis->add_option("--theta", theta_k, "apply theta this many times")->capture_default_str();
  eis->add_flag("--reduce", reduce, "reduce mod p");
  eis->add_flag("--as-rhs", rhs, "the Artin-Schreier right-hand side mod p instead");

  long l = 3;
  bool minimal = false;
  auto* asg = app.add_subcommand("as-generator", "solve for h(sigma) in the Artin-Schreier congruence");
  asg->add_option("--l", l, "pole order of p(sigma)")->capture_default_str();
  asg->add_flag("--minimal", minimal, "search for the smallest pole order");

  std::string expr;
  auto* rho = app.add_subcommand("rho", "evaluate the reciprocity map on a polynomial class");
  rho->add_option("--eval", expr, "polynomial in s, e.g. 's^2+3*s+1'")->required();

  auto* lfun = app.add_subcommand("lfunction", "character L-polynomials of the Kummer layer");

  std::string method = "both";
  unsigned zr = 4;
  auto* zeta = app.add_subcommand("zeta", "zeta function from characters and/or point counts");
  zeta->add_option("--method", method, "computation")->check(CLI::IsMember({"characters", "counts", "both"}))->capture_default_str();
  zeta->add_option("--r", zr, "compare N_1..N_r")->check(CLI::Range(1, 8))->capture_default_str();

  unsigned cn = 1;
  bool sweep = false;
  auto* count = app.add_subcommand("count", "points of the Kummer curve over F_{q^n}");
  count->add_option("--n", cn, "extension degree (with --sweep: 1..n)")->capture_default_str();
  count->add_flag("--sweep", sweep, "count for every degree up to n");

  std::string forms;
  auto* ann = app.add_subcommand("annihilate", "apply the annihilator to FormRecord fixtures");
  ann->add_option("--forms", forms, "FormRecord JSON file")->required()->check(CLI::ExistingFile);

  bool verify = false, solve = false;
  auto* pp = app.add_subcommand("principal-part", "cuspidal principal-part descriptor");
  pp->add_flag("--verify", verify, "pair against the holomorphic differentials");
  pp->add_flag("--solve", solve, "construct the function with these principal parts");

#ifdef CUSPANN_DATA_DIR
  std::string fixtures = std::string(CUSPANN_DATA_DIR) + "/fixtures_p5_m1.json";
#else
  std::string fixtures = "data/fixtures_p5_m1.json";
#endif
  std::uint64_t seed = 2024;
  auto* self = app.add_subcommand("selftest", "run the acceptance checks");
  self->add_option("--fixtures", fixtures, "FormRecord fixtures for the vanishing check")->capture_default_str();
  self->add_option("--seed", seed, "random seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.beta = parse_beta(beta);
    cfg.residue_sign = parse_residue_sign(sign);
    cfg.policy = parse_policy(policy);
    cfg.format = parse_format(format);
    cfg.params();  // validates p and m
    const bool text = cfg.format == OutputFormat::Text;

    if (text) std::cout << cfg.header() << "\n" << std::flush;
    Report R;
    std::string name;
    if (*deuring) name = "deuring", R = cmd_deuring(cfg);
    else if (*eis) name = "eisenstein", R = cmd_eisenstein(cfg, weight, theta_k, reduce, rhs);
    else if (*asg) name = "as-generator", R = cmd_as_generator(cfg, l, minimal);
    else if (*rho) name = "rho", R = cmd_rho(cfg, expr);
    else if (*lfun) name = "lfunction", R = cmd_lfunction(cfg);
    else if (*zeta) name = "zeta", R = cmd_zeta(cfg, method, zr);
    else if (*count) name = "count", R = cmd_count(cfg, cn, sweep);
    else if (*ann) name = "annihilate", R = cmd_annihilate(cfg, forms);
    else if (*pp) name = "principal-part", R = cmd_principal_part(cfg, verify, solve);
    else if (*self) name = "selftest", R = cmd_selftest(cfg, fixtures, seed, text);

    if (text) {
      std::cout << R.text;
    } else {
      ojson out = {{"command", name}, {"config", cfg.header_json()}, {"result", R.data}, {"status", R.status}};
      std::cout << out.dump(2) << "\n";
    }
    return R.status;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
