#include "slecoef/biseries.hpp"

namespace slecoef {

namespace {

void require_same_order(const BiSeries& a, const BiSeries& b) {
  if (a.nmax() != b.nmax()) throw UsageError("BiSeries: mismatched truncation orders");
}

Rational product_coeff(const BiSeries& a, const BiSeries& b, int i, int j) {
  Rational acc(0);
  for (int p = 0; p <= i; ++p)
    for (int r = 0; r <= j; ++r) {
      const Rational& x = a.at(p, r);
      if (x.is_zero()) continue;
      const Rational& y = b.at(i - p, j - r);
      if (y.is_zero()) continue;
      acc += x * y;
    }
  return acc;
}

}  // namespace

BiSeries& BiSeries::operator+=(const BiSeries& o) {
  require_same_order(*this, o);
  for (int i = 0; i <= nmax_; ++i)
    for (int j = 0; j <= nmax_; ++j) at(i, j) += o.at(i, j);
  return *this;
}

BiSeries& BiSeries::operator-=(const BiSeries& o) {
  require_same_order(*this, o);
  for (int i = 0; i <= nmax_; ++i)
    for (int j = 0; j <= nmax_; ++j) at(i, j) -= o.at(i, j);
  return *this;
}

BiSeries BiSeries::scaled(const Rational& f) const {
  BiSeries r(nmax_);
  for (int i = 0; i <= nmax_; ++i)
    for (int j = 0; j <= nmax_; ++j) r.at(i, j) = at(i, j) * f;
  return r;
}

BiSeries biseries_mul(const BiSeries& a, const BiSeries& b) {
  require_same_order(a, b);
  const int n = a.nmax();
  BiSeries out(n);
  const long cells = static_cast<long>(n + 1) * (n + 1);
#pragma omp parallel for schedule(dynamic, 8)
  for (long cell = 0; cell < cells; ++cell) {
    const int i = static_cast<int>(cell / (n + 1));
    const int j = static_cast<int>(cell % (n + 1));
    out.at(i, j) = product_coeff(a, b, i, j);
  }
  return out;
}

BiSeries biseries_mul_serial(const BiSeries& a, const BiSeries& b) {
  require_same_order(a, b);
  const int n = a.nmax();
  BiSeries out(n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) out.at(i, j) = product_coeff(a, b, i, j);
  return out;
}

BiSeries biseries_pow(const BiSeries& base, const Rational& a) {
  if (base.at(0, 0) != Rational(1))
    throw DomainError("biseries_pow: base must have constant term 1");
  const int n = base.nmax();
  BiSeries delta = base;  // base - 1
  delta.at(0, 0) = Rational(0);

  BiSeries acc = BiSeries::one(n);
  BiSeries power = BiSeries::one(n);  // delta^k
  const int kmax = 2 * n;             // delta^k has total degree >= k
  for (int k = 1; k <= kmax; ++k) {
    power = biseries_mul(power, delta);
    if (power.is_zero()) break;
    acc += power.scaled(binom_general(a, static_cast<unsigned long>(k)));
  }
  return acc;
}

}  // namespace slecoef
