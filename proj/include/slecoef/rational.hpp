#pragma once

// Exact rational scalar backed by GMP. Everything the recurrence solvers
// touch is one of these; floating point enters only through BigFloat.
//
// Values are always stored reduced with a positive denominator, so equality
// is cheap and rendering is canonical: "p/r", or just "p" when r == 1.

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "slecoef/errors.hpp"

namespace slecoef {

class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design, integers embed
  Rational(int n) : v_(n) {}   // NOLINT
  Rational(long num, long den) {
    if (den == 0) throw DomainError("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(const mpz_class& z) : v_(z) {}
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

  // Accepts "p", "+p", "-p", "p/r" with decimal digits and r != 0. Nothing
  // else round-trips through str(), so nothing else is accepted.
  static Rational parse(std::string_view text) {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      neg = text[pos] == '-';
      ++pos;
    }
    std::size_t num_begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == num_begin) throw ParseError("Rational: expected digits in '" + std::string(text) + "'");
    std::string num(text.substr(num_begin, pos - num_begin));
    std::string den = "1";
    if (pos < text.size()) {
      if (text[pos] != '/') throw ParseError("Rational: bad character in '" + std::string(text) + "'");
      ++pos;
      std::size_t den_begin = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == den_begin || pos != text.size())
        throw ParseError("Rational: bad denominator in '" + std::string(text) + "'");
      den = std::string(text.substr(den_begin));
    }
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw ParseError("Rational: zero denominator in '" + std::string(text) + "'");
    if (neg) n = -n;
    return Rational(n, d);
  }

  std::string str() const { return v_.get_str(); }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  double to_double() const { return v_.get_d(); }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  Rational inverse() const {
    if (is_zero()) throw DomainError("Rational: inverse of zero");
    mpq_class r;
    mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
    return Rational(r);
  }

  Rational pow_int(long e) const {
    if (e == 0) return Rational(1);
    const Rational base = e > 0 ? *this : inverse();
    const unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.v_.get_num_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), base.v_.get_den_mpz_t(), k);
    Rational r;
    r.v_ = mpq_class(n, d);  // powers of a canonical fraction stay coprime
    return r;
  }

  // Exact square root when both numerator and denominator are perfect
  // squares; nullopt otherwise. Negative values are a domain error.
  std::optional<Rational> sqrt_exact() const {
    if (sign() < 0) throw DomainError("Rational: sqrt of negative value");
    if (!mpz_perfect_square_p(v_.get_num_mpz_t()) || !mpz_perfect_square_p(v_.get_den_mpz_t()))
      return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), v_.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), v_.get_den_mpz_t());
    Rational r;
    r.v_ = mpq_class(n, d);
    return r;
  }

  const mpq_class& raw() const { return v_; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DomainError("Rational: division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_;
};

// Generalized binomial coefficient a(a-1)...(a-k+1)/k! for rational a.
inline Rational binom_general(const Rational& a, unsigned long k) {
  Rational r(1);
  for (unsigned long t = 0; t < k; ++t) {
    r *= a - Rational(static_cast<long>(t));
    r /= Rational(static_cast<long>(t) + 1);
  }
  return r;
}

}  // namespace slecoef
