#include "slecoef/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "slecoef/closed_form.hpp"
#include "slecoef/fourpoint.hpp"
#include "slecoef/mc.hpp"
#include "slecoef/op_compile.hpp"
#include "slecoef/solver.hpp"
#include "slecoef/spectrum.hpp"

namespace slecoef {

namespace {

using Clock = std::chrono::steady_clock;

CheckItem run_check(const std::string& name, double time_limit,
                    const std::function<std::string()>& body) {
  CheckItem item;
  item.name = name;
  const auto t0 = Clock::now();
  try {
    item.detail = body();
    item.pass = true;
  } catch (const std::exception& e) {
    item.pass = false;
    item.detail = e.what();
  }
  item.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (item.pass && time_limit > 0 && item.seconds > time_limit) {
    item.pass = false;
    item.detail = "exceeded time limit of " + std::to_string(time_limit) + " s";
  }
  return item;
}

[[noreturn]] void fail(const std::string& msg) { throw Error(msg); }

Rational rand_rational(std::mt19937_64& g, unsigned long num_range, unsigned long den_range) {
  const long num = 1 + static_cast<long>(g() % num_range);
  const long den = 1 + static_cast<long>(g() % den_range);
  return Rational(num, den);
}

// ---------------------------------------------------------------------------
// Independent expression evaluator for the displayed moment formulas. These
// are transcribed directly from the closed forms and never touch the solver.

Rational rho22_formula(const Rational& q, const Rational& k) { return 2 * q * q / (k + 2); }

Rational rho33_formula(const Rational& q, const Rational& k) {
  const Rational num = 9 * k * k + 8 * (14 * q + 7 + 16 * q * q) * k +
                       12 * (4 * q + 1) * (4 * q + 1);
  return q * q / 36 * num / ((k + 2) * (k + 1) * (k + 6));
}

Rational rho44_formula(const Rational& q, const Rational& k) {
  const Rational q2 = q * q, q3 = q2 * q, q4 = q2 * q2;
  const Rational poly =
      240 * (2 + 3 * q + 4 * q2) * (2 + 3 * q + 4 * q2) + 16 * k.pow_int(5) +
      8 * (744 * q4 + 340 + 1152 * q + 2363 * q2 + 1572 * q3) * k * k +
      8 * (701 * q2 + 378 * q3 + 414 * q + 192 + 144 * q4) * k.pow_int(3) +
      32 * (635 * q2 + 56 + 498 * q3 + 272 * q4 + 258 * q) * k +
      (204 * q + 243 * q2 + 284) * k.pow_int(4);
  const Rational den =
      (k + 2) * (k + 2) * (k + 1) * (k + 6) * (2 + 3 * k) * (10 + k);
  return q2 / 72 * poly / den;
}

Rational ext1_formula(const Rational& k) { return Rational(1) / (k + 1); }

Rational ext2_formula(const Rational& k) {
  return 8 * k * (6 + k) / (9 * (k + 1) * (3 * k + 2) * (k + 10));
}

Rational ext3_formula(const Rational& k) {
  const Rational num = k * (6 + k) * (27 * k.pow_int(3) + 446 * k * k + 1300 * k + 264);
  const Rational den =
      36 * (k + 1) * (k + 3) * (3 * k + 2) * (2 * k + 1) * (k + 10) * (k + 14);
  return num / den;
}

// ---------------------------------------------------------------------------

std::string c1_theorem1_kappa6() {
  const auto m = solve_two_point(Params::brownian(2, 6), 40);
  for (long i = 1; i <= 40; ++i)
    for (long j = 1; j <= 40; ++j) {
      Rational want(0);
      if (i == j) want = 1;
      else if (std::labs(i - j) == 1) want = Rational(-1, 2);
      if (m.entry(i, j) != want)
        fail("kappa=6 entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
             m.entry(i, j).str() + ", expected " + want.str());
    }
  return "tri-diagonal with unit diagonal and -1/2 off-diagonals, nmax=40";
}

std::string c2_theorem1_kappa2() {
  const auto m = solve_two_point(Params::brownian(2, 2), 40);
  for (long i = 1; i <= 40; ++i)
    for (long j = 1; j <= 40; ++j) {
      const long n = std::max(i, j);
      Rational want(0);
      if (i == j) want = Rational(n);
      else if (std::labs(i - j) == 1) want = Rational(1 - 2 * n, 3);
      else if (std::labs(i - j) == 2) want = Rational(n - 1, 6);
      if (m.entry(i, j) != want)
        fail("kappa=2 entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
             m.entry(i, j).str() + ", expected " + want.str());
    }
  return "five-diagonal with rho_nn = n, nmax=40";
}

std::string c3_symbolic_formulas() {
  std::mt19937_64 g(0x5ECC03F1u);
  for (int t = 0; t < 5; ++t) {
    const Rational q = rand_rational(g, 12, 5);
    const Rational k = rand_rational(g, 12, 5);
    const auto m = solve_two_point(Params::brownian(q, k), 4);
    const Rational want22 = rho22_formula(q, k);
    const Rational want33 = rho33_formula(q, k);
    const Rational want44 = rho44_formula(q, k);
    if (m.entry(2, 2) != want22 || m.entry(3, 3) != want33 || m.entry(4, 4) != want44)
      fail("interior diagonal formulas disagree at q=" + q.str() + ", kappa=" + k.str());
  }
  for (int t = 0; t < 5; ++t) {
    const Rational k = rand_rational(g, 12, 5);
    const auto m = solve_two_point(Params::brownian(2, k, Mode::exterior), 3);
    if (m.entry(1, 1) != ext1_formula(k) || m.entry(2, 2) != ext2_formula(k) ||
        m.entry(3, 3) != ext3_formula(k))
      fail("exterior second-moment formulas disagree at kappa=" + k.str());
  }
  return "rho_22/33/44 and three exterior moments match at 5 random points each";
}

std::string c4_closed_form_family() {
  const long num[] = {1, 1, 2, 3, 6, 8};
  const long den[] = {2, 1, 1, 1, 1, 1};
  for (int t = 0; t < 6; ++t) {
    const Rational kappa(num[t], den[t]);
    const ClosedFormSpec spec = ClosedFormSpec::family(kappa);
    const auto expanded = expand_closed_form(spec, 20);
    const auto solved = solve_two_point(Params::brownian(spec.q, kappa), 20);
    const auto report = compare(expanded, solved);
    if (!report.empty())
      fail("closed form vs solver at kappa=" + kappa.str() + ": first diff at (" +
           std::to_string(report.diffs[0].i) + "," + std::to_string(report.diffs[0].j) + "): " +
           report.diffs[0].lhs.str() + " vs " + report.diffs[0].rhs.str());
  }
  return "expansion == solver up to nmax=20 for six kappa values";
}

std::string c5_stencil_equivalence() {
  std::mt19937_64 g(0x57E4C11u);
  for (int t = 0; t < 5; ++t) {
    const Rational q = rand_rational(g, 12, 5);
    const Rational kappa = rand_rational(g, 12, 5);
    const auto interior = compile_stencil(loewner_operator({q}, kappa, Mode::interior));
    const auto exterior = compile_stencil(loewner_operator({q}, kappa, Mode::exterior));
    const EtaSequence eta_br = EtaSequence::stable(kappa / 2, 2);
    for (long i = 1; i <= 50; ++i)
      for (long j = 1; j <= 50; ++j)
        for (int n = 0; n <= 2; ++n)
          for (int k = 0; k <= 2; ++k) {
            if (interior.coeff1(i, j, n, k) != interior_coeff(i, j, n, k, q, kappa))
              fail("interior stencil mismatch at (" + std::to_string(i) + "," +
                   std::to_string(j) + ") offset (" + std::to_string(n) + "," +
                   std::to_string(k) + "), q=" + q.str() + " kappa=" + kappa.str());
            if (exterior.coeff1(i, j, n, k) != exterior_coeff(i, j, n, k, q, kappa))
              fail("exterior stencil mismatch at (" + std::to_string(i) + "," +
                   std::to_string(j) + ")");
            if (interior.coeff1(i, j, n, k) != levy_coeff(i, j, n, k, q, eta_br))
              fail("Levy-Brownian stencil mismatch at (" + std::to_string(i) + "," +
                   std::to_string(j) + ")");
          }
  }
  return "compiled rank-1 stencils equal hand tables on 1..50, all offsets, 5 points";
}

std::string c6_banded_truncation() {
  for (const auto& p : family_points(4)) {
    const Params params = Params::brownian(p.q, p.kappa);
    const auto m = solve_two_point(params, 25);
    const int band = bandwidth(m);
    if (band != p.N)
      fail("family (N=" + std::to_string(p.N) + ",n=" + std::to_string(p.n) + "): bandwidth " +
           std::to_string(band) + ", expected " + std::to_string(p.N));
    const auto row = first_row(params, 25);
    for (int j = p.N + 2; j <= 25; ++j)
      if (!row[static_cast<std::size_t>(j - 1)].is_zero())
        fail("family (N=" + std::to_string(p.N) + ",n=" + std::to_string(p.n) +
             "): first row not truncated at j=" + std::to_string(j));
  }
  return "bandwidth = N and first-row truncation at j = N+1 for all N <= 4";
}

std::string c7_levy_patterns() {
  std::vector<EtaSequence> eta1_3;
  eta1_3.push_back(EtaSequence::stable(3, 2));  // 3n^2, Brownian kappa=6
  eta1_3.push_back(EtaSequence::stable(3, 1));  // 3n
  {
    std::vector<Rational> t{Rational(0), Rational(3)};
    for (long n = 2; n <= 22; ++n) t.push_back(Rational(10 * n + 1, 2));
    eta1_3.push_back(EtaSequence::from_table(std::move(t)));
  }
  for (const auto& eta : eta1_3) {
    const auto m = solve_two_point(Params::levy(2, eta), 20);
    for (long n = 1; n <= 20; ++n)
      if (m.entry(n, n) != Rational(1))
        fail("eta_1=3 table: rho_" + std::to_string(n) + std::to_string(n) + " = " +
             m.entry(n, n).str() + ", expected 1");
  }

  std::vector<EtaSequence> eta1_1;
  eta1_1.push_back(EtaSequence::stable(1, 2));  // n^2, Brownian kappa=2
  {
    std::vector<Rational> t{Rational(0), Rational(1), Rational(4)};
    for (long n = 3; n <= 22; ++n) t.push_back(Rational(9 * n, 2));
    eta1_1.push_back(EtaSequence::from_table(std::move(t)));
  }
  {
    std::vector<Rational> t{Rational(0), Rational(1), Rational(4)};
    for (long n = 3; n <= 22; ++n) t.push_back(Rational(4));
    eta1_1.push_back(EtaSequence::from_table(std::move(t)));
  }
  for (const auto& eta : eta1_1) {
    const auto m = solve_two_point(Params::levy(2, eta), 20);
    for (long n = 1; n <= 20; ++n)
      if (m.entry(n, n) != Rational(n))
        fail("eta_1=1, eta_2=4 table: rho_" + std::to_string(n) + std::to_string(n) + " = " +
             m.entry(n, n).str() + ", expected " + std::to_string(n));
  }
  return "rho_nn = 1 for three eta_1=3 tables and rho_nn = n for three eta_1=1, eta_2=4 tables";
}

std::string c8_spectrum_triple() {
  struct Point {
    Rational q, kappa, beta;
    double eig_tol;
  };
  const std::vector<Point> points = {
      {Rational(2), Rational(6), Rational(3), 1e-6},
      {Rational(2), Rational(2), Rational(4), 1e-6},
      {Rational(21, 8), Rational(1), Rational(49, 8), 1e-4},
      {Rational(15, 8), Rational(4), Rational(25, 8), 1e-4},
  };
  std::ostringstream note;
  for (const auto& p : points) {
    const BetaClosed closed = beta_formula(p.q, p.kappa);
    if (!closed.exact || *closed.exact != p.beta)
      fail("beta_formula(" + p.q.str() + "," + p.kappa.str() + ") != " + p.beta.str());
    const double beta = p.beta.to_double();

    const auto top = top_eigenvalue(TridiagonalOp::brownian(p.q, p.kappa), 100);
    if (std::abs(top.beta - beta) > p.eig_tol)
      fail("top_eigenvalue at (" + p.q.str() + "," + p.kappa.str() + ") = " +
           std::to_string(top.beta) + ", |err| > " + std::to_string(p.eig_tol));

    const auto mf = solve_two_point_float(Params::brownian(p.q, p.kappa), 400, 128);
    std::vector<BigFloat> diag;
    for (long i = 1; i <= 400; ++i) diag.push_back(mf.entry(i, i));
    const auto fit = fit_exponent(diag, 200, 400);
    if (std::abs(fit.beta - beta) > 0.05)
      fail("fit_exponent at (" + p.q.str() + "," + p.kappa.str() + ") = " +
           std::to_string(fit.beta) + ", expected " + std::to_string(beta) + " +- 0.05");
    note << "(" << p.q.str() << "," << p.kappa.str() << "): eig " << top.beta << " fit "
         << fit.beta << "; ";
  }
  return note.str();
}

std::string c9_hahn_spectrum() {
  for (int N = 1; N <= 6; ++N) {
    const FamilyPoint p = family_point(N, N);
    const BetaClosed closed = beta_formula(p.q, p.kappa);
    if (!closed.exact || hahn_beta(N, N, 0) != *closed.exact)
      fail("hahn_beta(N,N,0) != beta_formula at N=" + std::to_string(N));
  }
  for (const auto& p : family_points(2)) {
    const auto spec = truncated_spectrum(TridiagonalOp::brownian(p.q, p.kappa), 100);
    for (int j = 0; j <= 2 * p.N; ++j) {
      const double want = hahn_beta(p.N, p.n, j).to_double();
      double best = 1e300;
      for (double lambda : spec) best = std::min(best, std::abs(lambda - want));
      if (best > 1e-4)
        fail("discrete spectrum value j=" + std::to_string(j) + " at (N=" + std::to_string(p.N) +
             ",n=" + std::to_string(p.n) + ") missing from truncation (nearest " +
             std::to_string(best) + ")");
    }
  }
  return "closed-form identity N<=6 and full j-spectra matched for N<=2";
}

std::string c10_fourpoint() {
  // q2 = 0 reduction.
  const Rational q1(2), kappa(5, 2);
  const auto four = solve_four_point(q1, 0, kappa, 8);
  const auto two = solve_two_point(Params::brownian(q1, kappa), 6);
  for (const auto& [key, value] : four.entries()) {
    if (key[1] == 1 && key[3] == 1) {
      if (value != two.entry(key[0], key[2]))
        fail("q2=0 reduction: entry (" + std::to_string(key[0]) + ",1;" +
             std::to_string(key[2]) + ",1) != two-point value");
    } else if (!value.is_zero()) {
      fail("q2=0 reduction: entry with second-pair index > 1 is nonzero");
    }
  }

  // Swap symmetry.
  const Rational qa(2), qb(3, 2), kap(7, 3);
  const auto ab = solve_four_point(qa, qb, kap, 8);
  const auto ba = solve_four_point(qb, qa, kap, 8);
  for (const auto& [key, value] : ab.entries())
    if (value != ba.entry(key[1], key[0], key[3], key[2]))
      fail("swap symmetry fails at (" + std::to_string(key[0]) + "," + std::to_string(key[1]) +
           ";" + std::to_string(key[2]) + "," + std::to_string(key[3]) + ")");

  // Balanced diagonal entries vs the MC fourth moments at kappa = 6.
  const auto fm = solve_four_point(2, 2, 6, 8);
  McConfig cfg;
  cfg.kappa = 6.0;
  cfg.nmax = 3;
  cfg.dt = 1e-3;
  cfg.horizon = 12.0;
  cfg.paths = 10000;
  cfg.seed = 20120420;
  cfg.fourth_pairs = {{1, 2}, {1, 3}, {2, 2}};
  const auto est = mc_run(cfg);
  for (const auto& f : est.fourth) {
    const double exact = fm.entry(f.i, f.j, f.i, f.j).to_double();
    if (std::abs(f.mean - exact) > 3 * f.std_error)
      fail("fourth moment (" + std::to_string(f.i) + "," + std::to_string(f.j) + "): MC " +
           std::to_string(f.mean) + " +- " + std::to_string(f.std_error) + " vs exact " +
           std::to_string(exact));
  }
  return "q2=0 reduction, swap symmetry (D=8), and MC fourth-moment agreement at kappa=6";
}

std::string c11_mc_oracle() {
  std::ostringstream note;
  for (double kappa : {2.0, 4.0, 6.0}) {
    McConfig cfg;
    cfg.kappa = kappa;
    cfg.nmax = 5;
    cfg.dt = 1e-3;
    cfg.horizon = 12.0;
    cfg.paths = 10000;
    cfg.seed = 20120420;
    const auto est = mc_run(cfg);
    const auto exact =
        solve_two_point(Params::brownian(2, Rational(static_cast<long>(kappa))), 5);
    for (const auto& s : est.second) {
      const double want = exact.entry(s.n, s.n).to_double();
      if (std::abs(s.mean - want) > 3 * s.std_error)
        fail("kappa=" + std::to_string(kappa) + ", n=" + std::to_string(s.n) + ": " +
             std::to_string(s.mean) + " +- " + std::to_string(s.std_error) + " vs exact " +
             std::to_string(want));
      if (kappa == 6.0 && std::abs(s.mean - 1.0) >= 0.05)
        fail("kappa=6, n=" + std::to_string(s.n) + ": |estimate - 1| = " +
             std::to_string(std::abs(s.mean - 1.0)) + " >= 0.05");
    }
    note << "kappa=" << kappa << " ok; ";
  }
  return note.str();
}

std::string c12_backend_agreement() {
  const std::vector<std::pair<Rational, Rational>> points = {
      {Rational(2), Rational(5, 2)}, {Rational(7, 3), Rational(7, 2)},
      {Rational(5, 2), Rational(13, 3)}};
  for (const auto& [q, kappa] : points) {
    const Params params = Params::brownian(q, kappa);
    const auto exact = solve_two_point(params, 60);
    const auto fl = solve_two_point_float(params, 60, 128);
    for (long i = 1; i <= 60; ++i)
      for (long j = 1; j <= 60; ++j) {
        const Rational& e = exact.entry(i, j);
        if (e.is_zero())
          fail("unexpected exact zero at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        const BigFloat ef(e, 128);
        const double rel = ((fl.entry(i, j) - ef) / ef).abs().to_double();
        if (rel > 1e-10)
          fail("backend mismatch at (" + std::to_string(i) + "," + std::to_string(j) +
               "), rel err " + std::to_string(rel));
      }
  }
  return "float(128) fill within 1e-10 of exact fill, nmax=60, 3 points";
}

struct Criterion {
  std::string name;
  double time_limit;
  std::string (*body)();
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> cs = {
      {"theorem1-kappa6", 30, c1_theorem1_kappa6},
      {"theorem1-kappa2", 0, c2_theorem1_kappa2},
      {"symbolic-formulas", 10, c3_symbolic_formulas},
      {"closed-form-family", 0, c4_closed_form_family},
      {"stencil-equivalence", 0, c5_stencil_equivalence},
      {"banded-truncation", 0, c6_banded_truncation},
      {"levy-patterns", 0, c7_levy_patterns},
      {"spectrum-triple", 120, c8_spectrum_triple},
      {"hahn-spectrum", 0, c9_hahn_spectrum},
      {"fourpoint", 0, c10_fourpoint},
      {"mc-oracle", 300, c11_mc_oracle},
      {"backend-agreement", 0, c12_backend_agreement},
  };
  return cs;
}

const std::vector<std::pair<std::string, std::vector<int>>>& suites() {
  static const std::vector<std::pair<std::string, std::vector<int>>> s = {
      {"theorem1", {0, 1}},
      {"closed-forms", {2, 3}},
      {"stencil-equivalence", {4}},
      {"levy", {6}},
      {"spectrum", {5, 7, 8}},
      {"fourpoint", {9}},
      {"mc", {10}},
      {"backend", {11}},
      {"all", {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}},
  };
  return s;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, ids] : suites()) names.push_back(name);
  return names;
}

SuiteResult verify_suite(const std::string& name) {
  for (const auto& [suite, ids] : suites()) {
    if (suite != name) continue;
    SuiteResult result;
    result.suite = name;
    for (int id : ids) {
      const auto& c = criteria()[static_cast<std::size_t>(id)];
      result.items.push_back(run_check(c.name, c.time_limit, c.body));
    }
    return result;
  }
  throw UsageError("verify: unknown suite '" + name + "'");
}

}  // namespace slecoef
