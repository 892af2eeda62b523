#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slecoef/closed_form.hpp"

using namespace slecoef;

TEST_CASE("family exponents and fixtures") {
  const ClosedFormSpec f6 = ClosedFormSpec::family(6);
  CHECK(f6.a == Rational(1));
  CHECK(f6.b == Rational(-3));
  CHECK(f6.q == Rational(2));
  const ClosedFormSpec f2 = ClosedFormSpec::family(2);
  CHECK(f2.a == ClosedFormSpec::kappa2().a);
  CHECK(f2.b == ClosedFormSpec::kappa2().b);
  CHECK(f2.q == ClosedFormSpec::kappa2().q);
  CHECK_THROWS_AS(ClosedFormSpec::family(0), DomainError);
}

TEST_CASE("expansion entries") {
  const auto m6 = expand_closed_form(ClosedFormSpec::kappa6(), 6);
  CHECK(m6.entry(1, 2) == Rational(-1, 2));
  CHECK(m6.entry(3, 3) == Rational(1));

  const auto m2 = expand_closed_form(ClosedFormSpec::kappa2(), 6);
  CHECK(m2.entry(2, 2) == Rational(2));
  CHECK(m2.entry(4, 2) == Rational(3, 6));  // (i-1)/6 at i=4
}

TEST_CASE("expansion equals the solver at kappa=1") {
  const ClosedFormSpec spec = ClosedFormSpec::family(1);
  CHECK(spec.q == Rational(21, 8));
  const auto expanded = expand_closed_form(spec, 20);
  const auto solved = solve_two_point(Params::brownian(spec.q, spec.kappa), 20);
  CHECK(compare(expanded, solved).empty());
}

TEST_CASE("compare reporting") {
  const auto a = solve_two_point(Params::brownian(2, 6), 5);
  CHECK(compare(a, a).empty());

  const auto e = expand_closed_form(ClosedFormSpec::kappa6(), 5);
  CHECK(compare(a, e).empty());

  const auto b = solve_two_point(Params::brownian(2, 2), 5);
  const auto report = compare(a, b);
  CHECK(!report.empty());
  // The diagonal branches of the theorem disagree starting at (2,2): 1 vs 2.
  bool found = false;
  for (const auto& d : report.diffs)
    if (d.i == 2 && d.j == 2) {
      found = true;
      CHECK(d.lhs == Rational(1));
      CHECK(d.rhs == Rational(2));
    }
  CHECK(found);

  const auto small = solve_two_point(Params::brownian(2, 6), 4);
  CHECK_THROWS_AS(compare(a, small), UsageError);

  CHECK(report_to_json(compare(a, a)) == "[]\n");
}
