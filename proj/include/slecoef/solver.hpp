#pragma once

// Consecutive fill of the moment table rho_{i,j} from a rank-1 stencil, row
// by row and left to right; each new entry is obtained by isolating the
// (0,0) offset term. Interior tables live on 1..nmax, exterior tables on
// {-1} u 1..nmax with the index-0 row and column identically absent.

#include <string>
#include <vector>

#include "slecoef/bigfloat.hpp"
#include "slecoef/params.hpp"
#include "slecoef/rational.hpp"
#include "slecoef/stencil.hpp"

namespace slecoef {

template <class S>
class MomentMatrixT {
 public:
  MomentMatrixT(Params params, int nmax, unsigned prec)
      : params_(std::move(params)), nmax_(nmax), prec_(prec) {
    if (nmax < 1) throw UsageError("MomentMatrix: nmax must be >= 1");
    if (params_.mode == Mode::interior) {
      for (long i = 1; i <= nmax; ++i) indices_.push_back(i);
    } else {
      indices_.push_back(-1);
      for (long i = 1; i <= nmax; ++i) indices_.push_back(i);
    }
    values_.resize(indices_.size() * indices_.size());
  }

  Mode mode() const { return params_.mode; }
  const Params& params() const { return params_; }
  int nmax() const { return nmax_; }
  unsigned precision() const { return prec_; }  // 0 for the exact backend
  const std::vector<long>& indices() const { return indices_; }

  bool stored(long i, long j) const { return valid(i) && valid(j); }

  const S& entry(long i, long j) const {
    if (!stored(i, j)) throw UsageError("MomentMatrix: index out of range");
    return values_[pos(i) * indices_.size() + pos(j)];
  }
  S& entry_mut(long i, long j) { return values_[pos(i) * indices_.size() + pos(j)]; }

  long seed_index() const { return params_.mode == Mode::interior ? 1 : -1; }

 private:
  bool valid(long i) const {
    if (params_.mode == Mode::interior) return i >= 1 && i <= nmax_;
    return i == -1 || (i >= 1 && i <= nmax_);
  }
  std::size_t pos(long i) const {
    if (params_.mode == Mode::interior) return static_cast<std::size_t>(i - 1);
    return i == -1 ? 0 : static_cast<std::size_t>(i);
  }

  Params params_;
  int nmax_;
  unsigned prec_;
  std::vector<long> indices_;
  std::vector<S> values_;
};

using MomentMatrix = MomentMatrixT<Rational>;
using MomentMatrixF = MomentMatrixT<BigFloat>;

MomentMatrix solve_two_point(const Params& params, int nmax);
MomentMatrixF solve_two_point_float(const Params& params, int nmax,
                                    unsigned prec = BigFloat::kDefaultPrecision);

// rho_{n,n} at q = 2, where it equals the second coefficient moment.
template <class S>
const S& second_moment(const MomentMatrixT<S>& m, long n) {
  if (m.params().q != Rational(2))
    throw UsageError("second_moment: identification with |F_n|^2 requires q = 2");
  return m.entry(n, n);
}

// Smallest b with rho_{i,j} = 0 whenever |i-j| > b; nmax when dense.
int bandwidth(const MomentMatrix& m);
int bandwidth(const MomentMatrixF& m, double tol);

// First-row coefficients rho_{1,j}, j = 1..jmax, via the three-term
// recurrence the stencil reduces to at i = 1. Interior mode only.
std::vector<Rational> first_row(const Params& params, int jmax);

// Re-substitutes every filled entry into its stencil equation. For the
// exact backend the maximum must be exactly zero; for the float backend the
// returned value is the largest |residual|.
bool residuals_vanish(const MomentMatrix& m);
double max_residual(const MomentMatrixF& m);

// The fill computes both triangles independently; this checks they agree.
bool symmetric(const MomentMatrix& m);

std::string moment_matrix_to_json(const MomentMatrix& m);
std::string moment_matrix_to_json(const MomentMatrixF& m);
std::string moment_matrix_to_csv(const MomentMatrix& m);
std::string moment_matrix_to_csv(const MomentMatrixF& m);
MomentMatrix moment_matrix_from_json(const std::string& text);

}  // namespace slecoef
