#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "slecoef/solver.hpp"
#include "slecoef/spectrum.hpp"

using namespace slecoef;

TEST_CASE("family points") {
  const FamilyPoint p11 = family_point(1, 1);
  CHECK(p11.q == Rational(2));
  CHECK(p11.kappa == Rational(6));
  const FamilyPoint p22 = family_point(2, 2);
  CHECK(p22.q == Rational(2));
  CHECK(p22.kappa == Rational(2));
  const FamilyPoint p21 = family_point(2, 1);
  CHECK(p21.q == Rational(2));
  CHECK(p21.kappa == Rational(2));
  // n = 1 always gives q = 2 and kappa = 2(2+N)/N^2.
  for (int N = 1; N <= 8; ++N) {
    const FamilyPoint p = family_point(N, 1);
    CHECK(p.q == Rational(2));
    CHECK(p.kappa == Rational(2 * (2 + N), static_cast<long>(N) * N));
  }
  CHECK(family_points(3).size() == 6);
  CHECK_THROWS_AS(family_point(2, 3), UsageError);
}

TEST_CASE("hahn_beta") {
  CHECK(hahn_beta(1, 1, 0) == Rational(3));
  CHECK(hahn_beta(2, 2, 0) == Rational(4));
  CHECK(hahn_beta(1, 1, 2) == Rational(2));
  CHECK(hahn_beta(1, 1, 1) == Rational(1));
  CHECK_THROWS_AS(hahn_beta(1, 1, 3), UsageError);
  CHECK_THROWS_AS(hahn_beta(1, 1, -1), UsageError);
}

TEST_CASE("beta_formula") {
  const BetaClosed b1 = beta_formula(2, 6);
  CHECK(b1.exact.value() == Rational(3));
  const BetaClosed b2 = beta_formula(2, 2);
  CHECK(b2.exact.value() == Rational(4));
  const BetaClosed b3 = beta_formula(Rational(15, 8), 4);
  CHECK(b3.exact.value() == Rational(25, 8));
  const BetaClosed b4 = beta_formula(Rational(21, 8), 1);
  CHECK(b4.exact.value() == Rational(49, 8));

  const BetaClosed inexact = beta_formula(2, 3);  // 1 + 12 = 13, not a square
  CHECK(!inexact.exact.has_value());
  CHECK(inexact.to_double() ==
        doctest::Approx(6.0 - 1.0 - 6.0 / (1.0 + std::sqrt(13.0))).epsilon(1e-12));

  CHECK_THROWS_AS(beta_formula(Rational(-1), Rational(10)), DomainError);
}

TEST_CASE("hahn identity with the closed form on the n=N subset") {
  for (int N = 1; N <= 6; ++N) {
    const FamilyPoint p = family_point(N, N);
    const BetaClosed closed = beta_formula(p.q, p.kappa);
    REQUIRE(closed.exact.has_value());
    CHECK(hahn_beta(N, N, 0) == closed.exact.value());
    CHECK(on_qkappa_family(p.q, p.kappa));
  }
}

TEST_CASE("tridiagonal operator coefficients") {
  const auto op = TridiagonalOp::brownian(2, 6);
  CHECK(op.a(1) == Rational(2));    // 3 + 1 - 2
  CHECK(op.c(1) == Rational(0));    // 3 - 1 - 2
  CHECK(op.b(1) == Rational(2));    // -6 + 8
  CHECK(op.b(0) == Rational(8));

  // Levy form reduces to Brownian exactly when eta_l = kappa l^2 / 2.
  const auto levy = TridiagonalOp::levy(2, EtaSequence::stable(3, 2));
  for (long l = -200; l <= 200; ++l) {
    CHECK(levy.a(l) == op.a(l));
    CHECK(levy.b(l) == op.b(l));
  }
}

TEST_CASE("top eigenvalue at the theorem points") {
  const auto t6 = top_eigenvalue(TridiagonalOp::brownian(2, 6), 100);
  CHECK(std::abs(t6.beta - 3.0) < 1e-6);
  CHECK(t6.residual < 1e-8);
  // Eigenvector proportional to (..., 0, -1/2, 1, -1/2, 0, ...).
  CHECK(t6.eigenvector[100] == doctest::Approx(1.0));
  CHECK(t6.eigenvector[99] == doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(t6.eigenvector[101] == doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(std::abs(t6.eigenvector[102]) < 1e-10);

  const auto t2 = top_eigenvalue(TridiagonalOp::brownian(2, 2), 100);
  CHECK(std::abs(t2.beta - 4.0) < 1e-6);

  const auto t1 = top_eigenvalue(TridiagonalOp::brownian(Rational(21, 8), 1), 200);
  CHECK(std::abs(t1.beta - 49.0 / 8.0) < 1e-4);

  CHECK_THROWS_AS(top_eigenvalue(TridiagonalOp::brownian(2, 6), 5), UsageError);
}

TEST_CASE("truncation convergence") {
  for (const auto& [q, kappa] : std::vector<std::pair<Rational, Rational>>{
           {Rational(2), Rational(6)}, {Rational(2), Rational(2)}}) {
    const double b100 = top_eigenvalue(TridiagonalOp::brownian(q, kappa), 100).beta;
    const double b200 = top_eigenvalue(TridiagonalOp::brownian(q, kappa), 200).beta;
    CHECK(std::abs(b100 - b200) < 1e-6);
  }
}

TEST_CASE("exponent fit on exact diagonals") {
  std::vector<double> ones(100, 1.0);
  CHECK(fit_exponent(ones, 40, 100).beta == doctest::Approx(3.0).epsilon(1e-9));

  std::vector<double> linear;
  for (int i = 1; i <= 100; ++i) linear.push_back(static_cast<double>(i));
  CHECK(fit_exponent(linear, 40, 100).beta == doctest::Approx(4.0).epsilon(1e-6));

  std::vector<double> with_zero(100, 1.0);
  with_zero[70] = 0.0;
  CHECK_THROWS_AS(fit_exponent(with_zero, 40, 100), FitError);
  CHECK_THROWS_AS(fit_exponent(ones, 90, 200), UsageError);
}

TEST_CASE("exponent fit on the kappa=1 float diagonal") {
  const auto mf = solve_two_point_float(Params::brownian(Rational(21, 8), 1), 200, 128);
  std::vector<BigFloat> diag;
  for (long i = 1; i <= 200; ++i) diag.push_back(mf.entry(i, i));
  const auto fit = fit_exponent(diag, 100, 200);
  CHECK(std::abs(fit.beta - 49.0 / 8.0) < 0.05);
}

TEST_CASE("closed-form diagonal at kappa=1 grows like i^(25/8)") {
  // Diagonal coefficients of (1-w)^a (1-wbar)^a (1-w wbar)^b straight from
  // the binomial series: c(s,s) = sum_k binom(b,k)(-1)^k binom(a,s-k)^2.
  const Rational a(7, 2), b(-49, 8);  // kappa = 1 exponents
  std::vector<double> diag;
  std::vector<Rational> w_coef{Rational(1)};
  for (int s = 1; s <= 220; ++s)
    w_coef.push_back(binom_general(a, static_cast<unsigned long>(s)) * Rational(-1).pow_int(s));
  for (long i = 1; i <= 220; ++i) {
    const int s = static_cast<int>(i) - 1;
    Rational c(0);
    for (int k = 0; k <= s; ++k)
      c += binom_general(b, static_cast<unsigned long>(k)) * Rational(-1).pow_int(k) *
           w_coef[static_cast<std::size_t>(s - k)] * w_coef[static_cast<std::size_t>(s - k)];
    diag.push_back((c / Rational(i * i)).to_double());
  }
  const auto fit = fit_exponent(diag, 120, 220);
  CHECK(std::abs((fit.beta - 3.0) - 25.0 / 8.0) < 0.05);
}

TEST_CASE("routes agree within 0.05 across the closed-form family") {
  for (long kv : {1L, 2L, 3L, 6L}) {
    const Rational kappa(kv);
    const Rational q = (kappa + 2) * (kappa + 6) / (8 * kappa);
    REQUIRE(on_qkappa_family(q, kappa));
    const double beta = beta_formula(q, kappa).to_double();
    CHECK(std::abs(top_eigenvalue(TridiagonalOp::brownian(q, kappa), 100).beta - beta) < 0.05);
    const auto mf = solve_two_point_float(Params::brownian(q, kappa), 200, 128);
    std::vector<BigFloat> diag;
    for (long i = 1; i <= 200; ++i) diag.push_back(mf.entry(i, i));
    CHECK(std::abs(fit_exponent(diag, 100, 200).beta - beta) < 0.05);
  }
}

TEST_CASE("compute_spectrum bundles the three routes") {
  const auto r = compute_spectrum(Params::brownian(2, 2), 60, 60);
  REQUIRE(r.formula.has_value());
  CHECK(r.formula->exact.value() == Rational(4));
  CHECK(std::abs(r.eigen.beta - 4.0) < 1e-6);
  REQUIRE(r.fit.has_value());
  CHECK(std::abs(r.fit->beta - 4.0) < 0.05);
  CHECK(r.flags.find("truncation-family") != std::string::npos);

  const auto levy = compute_spectrum(Params::levy(2, EtaSequence::stable(3, 2)), 60);
  CHECK(!levy.formula.has_value());
  CHECK(!levy.fit.has_value());
  CHECK(std::abs(levy.eigen.beta - 3.0) < 1e-6);
  CHECK(levy.flags == "levy+conjectural");

  CHECK_THROWS_AS(compute_spectrum(Params::brownian(2, 2, Mode::exterior), 60), UsageError);
}

TEST_CASE("family membership flags") {
  CHECK(on_qkappa_family(Rational(21, 8), 1));
  CHECK(!on_qkappa_family(2, 7));
  const auto p = truncation_family_point(2, Rational(10, 9));
  REQUIRE(p.has_value());
  CHECK(p->first == 3);
  CHECK(p->second == 1);
  CHECK(spectrum_flags(2, 7) == "conjectural");
  CHECK(spectrum_flags(2, 6) ==
        "closed-form-family+truncation-family(N=1,n=1)");
}
