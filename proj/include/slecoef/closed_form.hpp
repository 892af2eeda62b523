#pragma once

// Explicit correlator solutions (1-w)^a (1-wbar)^a (1-w wbar)^b expanded as
// exact bivariate series and compared coefficientwise with solver output.

#include <string>
#include <vector>

#include "slecoef/solver.hpp"

namespace slecoef {

struct ClosedFormSpec {
  Rational a;      // exponent on (1-w) and (1-wbar)
  Rational b;      // exponent on (1-w wbar)
  Rational q;
  Rational kappa;

  // One-parameter family: a = (6+kappa)/(2 kappa), b = -(6+kappa)^2/(8 kappa),
  // q = (2+kappa)(6+kappa)/(8 kappa).
  static ClosedFormSpec family(const Rational& kappa);

  // The two special cases, kept as independently hard-coded fixtures so a
  // slip in the family algebra cannot hide.
  static ClosedFormSpec kappa6() { return {Rational(1), Rational(-3), Rational(2), Rational(6)}; }
  static ClosedFormSpec kappa2() { return {Rational(2), Rational(-4), Rational(2), Rational(2)}; }
};

// Expands the closed form and repackages coefficients as rho_{i,j} =
// c(i-1, j-1) / (i j) on 1 <= i,j <= nmax.
MomentMatrix expand_closed_form(const ClosedFormSpec& spec, int nmax);

struct CompareReport {
  struct Diff {
    long i, j;
    Rational lhs, rhs;
  };
  std::vector<Diff> diffs;
  bool empty() const { return diffs.empty(); }
};

// Lists every differing entry; an empty report means exact equality.
CompareReport compare(const MomentMatrix& a, const MomentMatrix& b);

std::string report_to_json(const CompareReport& r);

}  // namespace slecoef
