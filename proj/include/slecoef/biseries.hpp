#pragma once

// Dense truncated power series in two variables (w, wbar) with exact
// rational coefficients. Indices outside [0, nmax]^2 are treated as zero and
// every ring operation closes over the truncation.

#include <vector>

#include "slecoef/errors.hpp"
#include "slecoef/rational.hpp"

namespace slecoef {

class BiSeries {
 public:
  explicit BiSeries(int nmax) : nmax_(nmax), c_(static_cast<std::size_t>(nmax + 1) * (nmax + 1)) {
    if (nmax < 0) throw UsageError("BiSeries: negative truncation order");
  }

  static BiSeries constant(int nmax, const Rational& value) {
    BiSeries s(nmax);
    s.at(0, 0) = value;
    return s;
  }
  static BiSeries one(int nmax) { return constant(nmax, Rational(1)); }

  int nmax() const { return nmax_; }

  Rational& at(int i, int j) { return c_[idx(i, j)]; }
  const Rational& at(int i, int j) const { return c_[idx(i, j)]; }

  // Coefficient with out-of-range reads giving zero.
  Rational get(int i, int j) const {
    if (i < 0 || j < 0 || i > nmax_ || j > nmax_) return Rational(0);
    return c_[idx(i, j)];
  }

  bool is_zero() const {
    for (const auto& v : c_)
      if (!v.is_zero()) return false;
    return true;
  }

  BiSeries& operator+=(const BiSeries& o);
  BiSeries& operator-=(const BiSeries& o);
  friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
  friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
  friend bool operator==(const BiSeries& a, const BiSeries& b) {
    return a.nmax_ == b.nmax_ && a.c_ == b.c_;
  }

  BiSeries scaled(const Rational& f) const;

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * (nmax_ + 1) + j; }

  int nmax_;
  std::vector<Rational> c_;
};

// Cauchy product truncated at nmax in each variable. biseries_mul runs the
// coefficient loop under OpenMP; biseries_mul_serial is the reference kept
// for tests and the benchmark.
BiSeries biseries_mul(const BiSeries& a, const BiSeries& b);
BiSeries biseries_mul_serial(const BiSeries& a, const BiSeries& b);
inline BiSeries operator*(const BiSeries& a, const BiSeries& b) { return biseries_mul(a, b); }

// Binomial series sum_k binom(a, k) (base - 1)^k; base must have unit
// constant term.
BiSeries biseries_pow(const BiSeries& base, const Rational& a);

}  // namespace slecoef
