#pragma once

// Integral-means beta spectrum routes: the banded truncation family, the
// closed-form eigenvalue, the exact discrete spectrum at family points, the
// truncated eigenproblem for the three-diagonal difference operator acting
// on diagonal asymptotics, and a least-squares exponent fit on solver
// diagonals. The three numeric routes must agree on the validated family.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slecoef/bigfloat.hpp"
#include "slecoef/params.hpp"
#include "slecoef/rational.hpp"

namespace slecoef {

struct FamilyPoint {
  int N = 1;
  int n = 1;
  Rational q, kappa;
};

// q = N n (2N-n+1)/(N^2+n^2-n), kappa = 2(2n+N)/(N^2+n^2-n); at these values
// the first row truncates at j = N+1 and the table is (2N+1)-diagonal.
FamilyPoint family_point(int N, int n);
std::vector<FamilyPoint> family_points(int Nmax);

// Exact discrete spectrum at family point (N, n): quadratic in j, 0 <= j <= 2N.
Rational hahn_beta(int N, int n, int j);

struct BetaClosed {
  std::optional<Rational> exact;  // set when 1 + 2 q kappa is a perfect square
  BigFloat value;                 // always set
  double to_double() const { return value.to_double(); }
};

// beta = 3q - 1 - q kappa / (1 + sqrt(1 + 2 q kappa)).
BetaClosed beta_formula(const Rational& q, const Rational& kappa,
                        unsigned prec = BigFloat::kDefaultPrecision);

// R[f]_l = (a_{l+1} f_{l+1} + b_l f_l + c_{l-1} f_{l-1}) / 2 with
// a_l = kappa l^2/2 + l - q (Brownian) or a_l = eta_l + l - q (Levy),
// c_l = a_{-l}, b_l = -a_l - c_l + 2q.
class TridiagonalOp {
 public:
  static TridiagonalOp brownian(const Rational& q, const Rational& kappa);
  static TridiagonalOp levy(const Rational& q, const EtaSequence& eta);

  Rational a(long l) const;
  Rational c(long l) const { return a(-l); }
  Rational b(long l) const { return -a(l) - c(l) + 2 * q_; }

  const Rational& q() const { return q_; }
  bool is_levy() const { return levy_; }
  const Rational& kappa() const { return kappa_; }

 private:
  Rational q_, kappa_;
  bool levy_ = false;
  EtaSequence eta_;
};

struct TopEigen {
  double beta = 0.0;
  int L = 0;
  double edge_mass = 0.0;  // largest |f| at the truncation boundary, inf-norm 1
  double residual = 0.0;   // ||R f - beta f||_inf / ||f||_inf
  std::vector<double> eigenvector;  // component l at position l + L
};

// Dense eigensolve of the (2L+1) x (2L+1) truncation over l in [-L, L];
// returns the eigenvalue of maximal real part whose eigenvector decays at
// the truncation edge. R is not symmetric, so a general solver is used and
// the residual is verified.
TopEigen top_eigenvalue(const TridiagonalOp& op, int L, double edge_tol = 1e-6,
                        double residual_tol = 1e-8);

// All eigenvalues of the truncation (real parts, sorted descending), for
// matching against the exact discrete spectrum.
std::vector<double> truncated_spectrum(const TridiagonalOp& op, int L);

struct ExponentFit {
  double beta = 0.0;
  int i_min = 0, i_max = 0;
  double slope_ls = 0.0;       // plain log-log least-squares slope
  double max_deviation = 0.0;  // worst residual of the local-slope model
};

// diagonal[t] = rho_{t+1,t+1}. Least squares on log rho vs log i plus
// extrapolation of local slopes in 1/i; returns beta = 3 + fitted exponent.
ExponentFit fit_exponent(const std::vector<double>& diagonal, int i_min, int i_max);
ExponentFit fit_exponent(const std::vector<BigFloat>& diagonal, int i_min, int i_max);

// The three routes bundled for one parameter point.
struct SpectrumResult {
  std::optional<BetaClosed> formula;  // closed form; absent for Levy drivers
  TopEigen eigen;
  std::optional<ExponentFit> fit;     // absent unless a fit length was given
  std::string flags;
};

// Runs the closed form (Brownian only), the truncated eigenproblem at
// half-width L, and, when fit_nmax > 0, the exponent fit on a float-backend
// diagonal of that length. Interior mode only.
SpectrumResult compute_spectrum(const Params& params, int L, int fit_nmax = 0,
                                unsigned prec = BigFloat::kDefaultPrecision);

bool on_qkappa_family(const Rational& q, const Rational& kappa);
std::optional<std::pair<int, int>> truncation_family_point(const Rational& q,
                                                           const Rational& kappa,
                                                           int search_Nmax = 64);

// beta-spectrum validity is only established on the two families; everything
// else is reported with a "conjectural" flag.
std::string spectrum_flags(const Rational& q, const Rational& kappa);

}  // namespace slecoef
