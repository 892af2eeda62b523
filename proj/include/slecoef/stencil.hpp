#pragma once

// Recurrence stencil coefficients C_{i,j}^{n,k}. Two independent sources
// exist for the rank-1 tables: the hand-coded formulas here and the PDE
// compiler (op_compile.hpp); each validates the other.

#include <functional>
#include <vector>

#include "slecoef/params.hpp"
#include "slecoef/rational.hpp"

namespace slecoef {

// Interior Brownian table, e.g. C^{0,0} = -(kappa/2 (i-j)^2 + i + j - 2).
Rational interior_coeff(long i, long j, int n, int k, const Rational& q, const Rational& kappa);

// Exterior Brownian table, e.g. C^{0,0} = -(kappa/2 (i-j)^2 + i + j + 2).
Rational exterior_coeff(long i, long j, int n, int k, const Rational& q, const Rational& kappa);

// Levy table, e.g. C^{0,0} = -eta_{i-j} - i - j + 2. Reduces to the
// interior table under eta_n = kappa n^2 / 2.
Rational levy_coeff(long i, long j, int n, int k, const Rational& q, const EtaSequence& eta);

// Rank-n stencil evaluator: multi-indices i, j with offsets l, k in
// {0,1,2}^rank, arrays of length rank().
class Stencil {
 public:
  using EvalFn = std::function<Rational(const long* i, const long* j, const int* l, const int* k)>;

  Stencil(int rank, EvalFn eval) : rank_(rank), eval_(std::move(eval)) {}

  int rank() const { return rank_; }

  Rational coeff(long i, long j, int l, int k) const {
    if (rank_ != 1) throw UsageError("Stencil: scalar access on rank != 1");
    return eval_(&i, &j, &l, &k);
  }
  Rational coeff(const std::vector<long>& i, const std::vector<long>& j,
                 const std::vector<int>& l, const std::vector<int>& k) const {
    if (static_cast<int>(i.size()) != rank_ || static_cast<int>(j.size()) != rank_ ||
        static_cast<int>(l.size()) != rank_ || static_cast<int>(k.size()) != rank_)
      throw UsageError("Stencil: index arity mismatch");
    return eval_(i.data(), j.data(), l.data(), k.data());
  }
  Rational coeff_raw(const long* i, const long* j, const int* l, const int* k) const {
    return eval_(i, j, l, k);
  }

 private:
  int rank_;
  EvalFn eval_;
};

// Rank-1 stencil backed by the hand table matching params.
Stencil hand_stencil(const Params& params);

}  // namespace slecoef
