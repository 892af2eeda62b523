#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "slecoef/biseries.hpp"

using namespace slecoef;

namespace {

BiSeries random_series(int nmax, std::uint64_t seed, bool unit_constant) {
  std::mt19937_64 g(seed);
  BiSeries s(nmax);
  for (int i = 0; i <= nmax; ++i)
    for (int j = 0; j <= nmax; ++j)
      s.at(i, j) = Rational(static_cast<long>(g() % 11) - 5, 1 + static_cast<long>(g() % 5));
  if (unit_constant) s.at(0, 0) = Rational(1);
  return s;
}

// (1 - w wbar)^a straight from the binomial series; used as the independent
// route for the multiplication check.
BiSeries diagonal_binomial(int nmax, const Rational& a) {
  BiSeries s(nmax);
  for (int t = 0; t <= nmax; ++t)
    s.at(t, t) = binom_general(a, static_cast<unsigned long>(t)) * Rational(-1).pow_int(t);
  return s;
}

}  // namespace

TEST_CASE("multiplicative identity and geometric series") {
  const BiSeries s = random_series(6, 3, false);
  CHECK(biseries_mul(BiSeries::one(6), s) == s);

  BiSeries one_minus_w(5);
  one_minus_w.at(0, 0) = Rational(1);
  one_minus_w.at(1, 0) = Rational(-1);
  BiSeries geo(5);
  for (int i = 0; i <= 5; ++i) geo.at(i, 0) = Rational(1);
  CHECK(biseries_mul(one_minus_w, geo) == BiSeries::one(5));
}

TEST_CASE("(1-w wbar)^-3 times (1-w wbar)^3 is 1 up to truncation") {
  const BiSeries a = diagonal_binomial(8, Rational(-3));
  const BiSeries b = diagonal_binomial(8, Rational(3));
  CHECK(biseries_mul(a, b) == BiSeries::one(8));
}

TEST_CASE("mismatched truncation is a usage error") {
  CHECK_THROWS_AS(biseries_mul(BiSeries::one(3), BiSeries::one(4)), UsageError);
}

TEST_CASE("parallel product equals serial product") {
  const BiSeries a = random_series(17, 11, false);
  const BiSeries b = random_series(17, 12, false);
  CHECK(biseries_mul(a, b) == biseries_mul_serial(a, b));
}

TEST_CASE("binomial series of 1-w") {
  BiSeries base(7);
  base.at(0, 0) = Rational(1);
  base.at(1, 0) = Rational(-1);

  const BiSeries neg3 = biseries_pow(base, Rational(-3));
  for (int k = 0; k <= 7; ++k) {
    const long want = static_cast<long>(k + 2) * (k + 1) / 2;  // C(k+2, 2)
    CHECK(neg3.at(k, 0) == Rational(want));
  }

  const BiSeries half = biseries_pow(base, Rational(1, 2));
  CHECK(half.at(1, 0) == Rational(-1, 2));

  BiSeries not_unit = base;
  not_unit.at(0, 0) = Rational(2);
  CHECK_THROWS_AS(biseries_pow(not_unit, Rational(2)), DomainError);
}

TEST_CASE("pow round trip and exponent additivity") {
  std::mt19937_64 g(99);
  for (int t = 0; t < 5; ++t) {
    const BiSeries s = random_series(8, g(), true);
    const Rational a(1 + static_cast<long>(g() % 7), 1 + static_cast<long>(g() % 4));
    const Rational b(-(1 + static_cast<long>(g() % 5)), 1 + static_cast<long>(g() % 3));

    CHECK(biseries_pow(biseries_pow(s, a), a.inverse()) == s);
    CHECK(biseries_mul(biseries_pow(s, a), biseries_pow(s, b)) == biseries_pow(s, a + b));
  }
}
