#pragma once

// Rank-2 moment fill: coefficients rho_{i1,i2;j1,j2} of the 4-point
// correlator, filled in graded-lexicographic order over the lattice
// i_m, j_m >= 1 with total degree i1+i2+j1+j2 <= D, through the compiled
// 81-point stencil. Balanced coefficients (i1+i2 = j1+j2) at q1 = q2 = 2 are
// the fourth coefficient moments.

#include <array>
#include <map>
#include <vector>

#include "slecoef/op_compile.hpp"
#include "slecoef/rational.hpp"

namespace slecoef {

class MultiMatrix {
 public:
  using Key = std::array<long, 4>;  // i1, i2, j1, j2

  MultiMatrix(Rational q1, Rational q2, Rational kappa, int degree)
      : q1_(std::move(q1)), q2_(std::move(q2)), kappa_(std::move(kappa)), degree_(degree) {}

  const Rational& q1() const { return q1_; }
  const Rational& q2() const { return q2_; }
  const Rational& kappa() const { return kappa_; }
  int degree() const { return degree_; }

  bool stored(const Key& k) const { return entries_.count(k) != 0; }
  Rational entry(long i1, long i2, long j1, long j2) const {
    auto it = entries_.find({i1, i2, j1, j2});
    return it == entries_.end() ? Rational(0) : it->second;
  }

  const std::map<Key, Rational>& entries() const { return entries_; }

  struct Balanced {
    Key index;
    Rational value;
  };
  std::vector<Balanced> balanced_entries() const;  // i1+i2 == j1+j2

 private:
  friend MultiMatrix solve_four_point(const Rational&, const Rational&, const Rational&, int);

  Rational q1_, q2_, kappa_;
  int degree_;
  std::map<Key, Rational> entries_;
};

MultiMatrix solve_four_point(const Rational& q1, const Rational& q2, const Rational& kappa,
                             int degree);

}  // namespace slecoef
