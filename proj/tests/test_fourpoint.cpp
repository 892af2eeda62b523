#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slecoef/fourpoint.hpp"
#include "slecoef/solver.hpp"

using namespace slecoef;

TEST_CASE("seed and degree guard") {
  CHECK_THROWS_AS(solve_four_point(2, 2, 6, 3), UsageError);
  const auto m = solve_four_point(2, 2, 6, 6);
  CHECK(m.entry(1, 1, 1, 1) == Rational(1));
  CHECK(m.entry(5, 5, 5, 5) == Rational(0));  // outside the lattice reads as zero
}

TEST_CASE("q2 = 0 reduces to the two-point solve") {
  const Rational q1(9, 5), kappa(11, 4);
  const auto four = solve_four_point(q1, 0, kappa, 8);
  const auto two = solve_two_point(Params::brownian(q1, kappa), 6);
  for (const auto& [key, value] : four.entries()) {
    if (key[1] == 1 && key[3] == 1)
      CHECK(value == two.entry(key[0], key[2]));
    else
      CHECK(value == Rational(0));
  }
}

TEST_CASE("pair swap symmetry") {
  const auto ab = solve_four_point(Rational(2), Rational(3, 2), Rational(7, 3), 8);
  const auto ba = solve_four_point(Rational(3, 2), Rational(2), Rational(7, 3), 8);
  for (const auto& [key, value] : ab.entries())
    CHECK(value == ba.entry(key[1], key[0], key[3], key[2]));
}

TEST_CASE("marginals with a unit pair reproduce the two-point table at q=2") {
  const auto four = solve_four_point(2, 2, 6, 8);
  const auto two = solve_two_point(Params::brownian(2, 6), 3);
  for (long i = 1; i <= 3; ++i)
    for (long j = 1; j <= 3; ++j)
      if (i + j <= 6 - 2) CHECK(four.entry(1, i, 1, j) == two.entry(i, j));
}

TEST_CASE("balanced entries") {
  const auto m = solve_four_point(2, 2, 2, 6);
  for (const auto& b : m.balanced_entries())
    CHECK(b.index[0] + b.index[1] == b.index[2] + b.index[3]);
  // <|F_1|^4> = 1 trivially at the seed.
  CHECK(m.entry(1, 1, 1, 1) == Rational(1));
}

TEST_CASE("within-table symmetries at equal exponents") {
  const auto m = solve_four_point(2, 2, Rational(5, 2), 8);
  for (const auto& [key, value] : m.entries()) {
    // simultaneous swap of the two point pairs
    CHECK(value == m.entry(key[1], key[0], key[3], key[2]));
    // real table: swapping barred and unbarred indices changes nothing
    CHECK(value == m.entry(key[2], key[3], key[0], key[1]));
  }
}
