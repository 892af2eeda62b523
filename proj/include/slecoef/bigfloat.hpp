#pragma once

// Configurable-precision floating scalar on top of MPFR, used by the float
// solver backend and the asymptotic exponent fit. Binary operations round to
// the larger operand precision with round-to-nearest.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "slecoef/errors.hpp"
#include "slecoef/rational.hpp"

namespace slecoef {

class BigFloat {
 public:
  static constexpr unsigned kMinPrecision = 53;
  static constexpr unsigned kDefaultPrecision = 128;

  explicit BigFloat(unsigned prec = kDefaultPrecision) {
    check_precision(prec);
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const Rational& r, unsigned prec) {
    check_precision(prec);
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, r.raw().get_mpq_t(), MPFR_RNDN);
  }
  static BigFloat from_double(double d, unsigned prec = kMinPrecision) {
    BigFloat r(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }
  static BigFloat from_long(long n, unsigned prec) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, n, MPFR_RNDN);
    return r;
  }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, kMinPrecision);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Exact: every finite BigFloat is a dyadic rational.
  Rational to_rational() const {
    if (!mpfr_number_p(v_)) throw DomainError("BigFloat: non-finite value has no rational form");
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return Rational(q);
  }

  std::string str() const {
    int digits = static_cast<int>(precision() * 0.30103) + 2;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  BigFloat abs() const {
    BigFloat r(precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat sqrt() const {
    if (sign() < 0) throw DomainError("BigFloat: sqrt of negative value");
    BigFloat r(precision());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat log() const {
    if (sign() <= 0) throw DomainError("BigFloat: log of non-positive value");
    BigFloat r(precision());
    mpfr_log(r.v_, v_, MPFR_RNDN);
    return r;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    if (b.is_zero()) throw DomainError("BigFloat: division by zero");
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& o) { *this = *this + o; return *this; }
  BigFloat& operator-=(const BigFloat& o) { *this = *this - o; return *this; }
  BigFloat& operator*=(const BigFloat& o) { *this = *this * o; return *this; }
  BigFloat& operator/=(const BigFloat& o) { *this = *this / o; return *this; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

 private:
  static void check_precision(unsigned prec) {
    if (prec < kMinPrecision)
      throw UsageError("BigFloat: precision must be >= " + std::to_string(kMinPrecision) + " bits");
  }
  mpfr_t v_;
};

}  // namespace slecoef
