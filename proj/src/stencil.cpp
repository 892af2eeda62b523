#include "slecoef/stencil.hpp"

namespace slecoef {

namespace {

inline Rational sq(long x) { return Rational(x * x); }

}  // namespace

Rational interior_coeff(long i, long j, int n, int k, const Rational& q, const Rational& kappa) {
  const Rational h = kappa / 2;
  const long d = i - j;
  switch (n * 3 + k) {
    case 0:  // (0,0)
      return -(h * sq(d) + Rational(i + j - 2));
    case 4:  // (1,1)
      return Rational(-4) * (h * sq(d) - 2 * q);
    case 8:  // (2,2)
      return -(h * sq(d) - Rational(i + j - 6) - 2 * q);
    case 1:  // (0,1)
      return 2 * (h * sq(d + 1) + Rational(i - 1) - q);
    case 3:  // (1,0)
      return 2 * (h * sq(d - 1) + Rational(j - 1) - q);
    case 2:  // (0,2)
      return -(h * sq(d + 2) + Rational(d + 2) - q);
    case 6:  // (2,0)
      return -(h * sq(d - 2) - Rational(d - 2) - q);
    case 5:  // (1,2)
      return 2 * (h * sq(d + 1) + Rational(3 - j) - 2 * q);
    case 7:  // (2,1)
      return 2 * (h * sq(d - 1) + Rational(3 - i) - 2 * q);
    default:
      throw UsageError("stencil offset out of range");
  }
}

Rational exterior_coeff(long i, long j, int n, int k, const Rational& q, const Rational& kappa) {
  const Rational h = kappa / 2;
  const long d = i - j;
  switch (n * 3 + k) {
    case 0:  // (0,0)
      return -(h * sq(d) + Rational(i + j + 2));
    case 4:  // (1,1)
      return Rational(-2) * kappa * sq(d);
    case 8:  // (2,2)
      return -(h * sq(d) - Rational(i + j - 2) + 2 * q);
    case 1:  // (0,1)
      return 2 * (h * sq(d + 1) + Rational(i + 1));
    case 3:  // (1,0)
      return 2 * (h * sq(d - 1) + Rational(j + 1));
    case 2:  // (0,2)
      return -(h * sq(d + 2) + Rational(d + 2) + q);
    case 6:  // (2,0)
      return -(h * sq(d - 2) - Rational(d - 2) + q);
    case 5:  // (1,2)
      return 2 * (h * sq(d + 1) + Rational(1 - j) + q);
    case 7:  // (2,1)
      return 2 * (h * sq(d - 1) + Rational(1 - i) + q);
    default:
      throw UsageError("stencil offset out of range");
  }
}

Rational levy_coeff(long i, long j, int n, int k, const Rational& q, const EtaSequence& eta) {
  const long d = i - j;
  switch (n * 3 + k) {
    case 0:  // (0,0)
      return -eta.at(d) - Rational(i + j - 2);
    case 4:  // (1,1)
      return Rational(-4) * (eta.at(d) - 2 * q);
    case 8:  // (2,2)
      return -eta.at(d) + Rational(i + j - 6) + 2 * q;
    case 1:  // (0,1)
      return 2 * (eta.at(d + 1) + Rational(i - 1) - q);
    case 3:  // (1,0)
      return 2 * (eta.at(d - 1) + Rational(j - 1) - q);
    case 2:  // (0,2)
      return -eta.at(d + 2) - Rational(d + 2) + q;
    case 6:  // (2,0)
      return -eta.at(d - 2) + Rational(d - 2) + q;
    case 5:  // (1,2)
      return 2 * (eta.at(d + 1) + Rational(3 - j) - 2 * q);
    case 7:  // (2,1)
      return 2 * (eta.at(d - 1) + Rational(3 - i) - 2 * q);
    default:
      throw UsageError("stencil offset out of range");
  }
}

Stencil hand_stencil(const Params& params) {
  params.validate();
  if (params.driver == DriverKind::levy) {
    const Rational q = params.q;
    const EtaSequence eta = params.eta;
    return Stencil(1, [q, eta](const long* i, const long* j, const int* l, const int* k) {
      return levy_coeff(*i, *j, *l, *k, q, eta);
    });
  }
  const Rational q = params.q;
  const Rational kappa = params.kappa;
  if (params.mode == Mode::interior)
    return Stencil(1, [q, kappa](const long* i, const long* j, const int* l, const int* k) {
      return interior_coeff(*i, *j, *l, *k, q, kappa);
    });
  return Stencil(1, [q, kappa](const long* i, const long* j, const int* l, const int* k) {
    return exterior_coeff(*i, *j, *l, *k, q, kappa);
  });
}

}  // namespace slecoef
