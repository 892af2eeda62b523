#include "slecoef/spectrum.hpp"

#include "slecoef/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace slecoef {

FamilyPoint family_point(int N, int n) {
  if (N < 1 || n < 1 || n > N) throw UsageError("family_point: need 1 <= n <= N");
  const long denom = static_cast<long>(N) * N + static_cast<long>(n) * n - n;
  FamilyPoint p;
  p.N = N;
  p.n = n;
  p.q = Rational(static_cast<long>(N) * n * (2L * N - n + 1), denom);
  p.kappa = Rational(2L * (2L * n + N), denom);
  return p;
}

std::vector<FamilyPoint> family_points(int Nmax) {
  if (Nmax < 1) throw UsageError("family_points: Nmax must be >= 1");
  std::vector<FamilyPoint> out;
  for (int N = 1; N <= Nmax; ++N)
    for (int n = 1; n <= N; ++n) out.push_back(family_point(N, n));
  return out;
}

Rational hahn_beta(int N, int n, int j) {
  if (N < 1 || n < 1 || n > N) throw UsageError("hahn_beta: need 1 <= n <= N");
  if (j < 0 || j > 2 * N) throw UsageError("hahn_beta: j must lie in [0, 2N]");
  const long Nl = N, nl = n, jl = j;
  const long num = 2 * Nl * (nl + 6 * nl * Nl - 3 * nl * nl - Nl) -
                   (8 * nl * Nl - 2 * nl * nl - Nl + 2 * Nl * Nl) * jl +
                   (2 * nl + Nl) * jl * jl;
  return Rational(num, 2 * (Nl * Nl + nl * nl - nl));
}

BetaClosed beta_formula(const Rational& q, const Rational& kappa, unsigned prec) {
  const Rational disc = Rational(1) + 2 * q * kappa;
  if (disc.sign() < 0) throw DomainError("beta_formula: 1 + 2 q kappa is negative");
  BetaClosed out;
  if (auto root = disc.sqrt_exact()) {
    const Rational beta = 3 * q - Rational(1) - q * kappa / (Rational(1) + *root);
    out.exact = beta;
    out.value = BigFloat(beta, prec);
    return out;
  }
  const BigFloat qf(q, prec), kf(kappa, prec);
  const BigFloat root = BigFloat(disc, prec).sqrt();
  out.value = BigFloat(Rational(3) * q - Rational(1), prec) -
              qf * kf / (BigFloat(Rational(1), prec) + root);
  return out;
}

TridiagonalOp TridiagonalOp::brownian(const Rational& q, const Rational& kappa) {
  TridiagonalOp op;
  op.q_ = q;
  op.kappa_ = kappa;
  return op;
}

TridiagonalOp TridiagonalOp::levy(const Rational& q, const EtaSequence& eta) {
  TridiagonalOp op;
  op.q_ = q;
  op.levy_ = true;
  op.eta_ = eta;
  return op;
}

Rational TridiagonalOp::a(long l) const {
  if (levy_) return eta_.at(l) + Rational(l) - q_;
  return kappa_ * Rational(l * l) / 2 + Rational(l) - q_;
}

namespace {

Eigen::MatrixXd truncation_matrix(const TridiagonalOp& op, int L) {
  if (L < 10) throw UsageError("top_eigenvalue: truncation half-width L must be >= 10");
  const int dim = 2 * L + 1;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const long l = static_cast<long>(r) - L;
    M(r, r) = op.b(l).to_double() / 2.0;
    if (r + 1 < dim) M(r, r + 1) = op.a(l + 1).to_double() / 2.0;
    if (r > 0) M(r, r - 1) = op.c(l - 1).to_double() / 2.0;
  }
  return M;
}

}  // namespace

TopEigen top_eigenvalue(const TridiagonalOp& op, int L, double edge_tol, double residual_tol) {
  const Eigen::MatrixXd M = truncation_matrix(op, L);
  const int dim = 2 * L + 1;
  Eigen::EigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) throw SpectralFailure("top_eigenvalue: eigensolver failed", 0.0);

  std::vector<int> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return es.eigenvalues()(a).real() > es.eigenvalues()(b).real();
  });

  double best_edge = 1.0;
  for (int t : order) {
    const std::complex<double> lambda = es.eigenvalues()(t);
    Eigen::VectorXcd v = es.eigenvectors().col(t);
    int peak = 0;
    double peak_abs = 0.0;
    for (int r = 0; r < dim; ++r)
      if (std::abs(v(r)) > peak_abs) {
        peak_abs = std::abs(v(r));
        peak = r;
      }
    if (peak_abs == 0.0) continue;
    const double edge = std::max(std::abs(v(0)), std::abs(v(dim - 1))) / peak_abs;
    best_edge = std::min(best_edge, edge);
    if (edge >= edge_tol) continue;
    if (std::abs(lambda.imag()) > 1e-8 * (1.0 + std::abs(lambda.real()))) continue;

    // Rotate the peak component onto the real axis and keep the real part.
    const std::complex<double> phase = v(peak) / peak_abs;
    Eigen::VectorXd f(dim);
    for (int r = 0; r < dim; ++r) f(r) = (v(r) / phase).real() / peak_abs;

    const double resid = (M * f - lambda.real() * f).lpNorm<Eigen::Infinity>() /
                         f.lpNorm<Eigen::Infinity>();
    if (resid > residual_tol) continue;

    TopEigen out;
    out.beta = lambda.real();
    out.L = L;
    out.edge_mass = edge;
    out.residual = resid;
    out.eigenvector.assign(f.data(), f.data() + dim);
    return out;
  }
  throw SpectralFailure("top_eigenvalue: no decaying eigenvector found (smallest edge mass " +
                            std::to_string(best_edge) + ")",
                        best_edge);
}

std::vector<double> truncated_spectrum(const TridiagonalOp& op, int L) {
  const Eigen::MatrixXd M = truncation_matrix(op, L);
  Eigen::EigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) throw SpectralFailure("truncated_spectrum: eigensolver failed", 0.0);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * L + 1));
  for (int t = 0; t < 2 * L + 1; ++t) out.push_back(es.eigenvalues()(t).real());
  std::sort(out.rbegin(), out.rend());
  return out;
}

namespace {

ExponentFit fit_from_logs(const std::vector<double>& log_rho, int i_min, int i_max) {
  // log_rho[t] is log rho_{i,i} for i = i_min + t.
  const int count = i_max - i_min + 1;
  if (count < 5) throw FitError("fit_exponent: window too small");

  // Plain least squares of log rho against log i.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int t = 0; t < count; ++t) {
    const double x = std::log(static_cast<double>(i_min + t));
    const double y = log_rho[static_cast<std::size_t>(t)];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope_ls = (count * sxy - sx * sy) / (count * sxx - sx * sx);

  // Local slopes behave like p + c/i; extrapolate the 1/i -> 0 intercept.
  double su = 0, sv = 0, suu = 0, suv = 0;
  std::vector<std::pair<double, double>> pts;
  for (int t = 0; t + 1 < count; ++t) {
    const long i = i_min + t;
    const double s = (log_rho[static_cast<std::size_t>(t + 1)] - log_rho[static_cast<std::size_t>(t)]) /
                     (std::log(static_cast<double>(i + 1)) - std::log(static_cast<double>(i)));
    const double u = 1.0 / (static_cast<double>(i) + 0.5);
    pts.emplace_back(u, s);
    su += u;
    sv += s;
    suu += u * u;
    suv += u * s;
  }
  const double npts = static_cast<double>(pts.size());
  const double denom = npts * suu - su * su;
  double intercept, local_slope;
  if (std::abs(denom) < 1e-300) {
    intercept = sv / npts;
    local_slope = 0.0;
  } else {
    local_slope = (npts * suv - su * sv) / denom;
    intercept = (sv - local_slope * su) / npts;
  }

  ExponentFit fit;
  fit.beta = 3.0 + intercept;
  fit.i_min = i_min;
  fit.i_max = i_max;
  fit.slope_ls = slope_ls;
  for (const auto& [u, s] : pts)
    fit.max_deviation = std::max(fit.max_deviation, std::abs(s - (intercept + local_slope * u)));
  return fit;
}

}  // namespace

ExponentFit fit_exponent(const std::vector<double>& diagonal, int i_min, int i_max) {
  if (i_min < 1 || i_max > static_cast<int>(diagonal.size()) || i_min >= i_max)
    throw UsageError("fit_exponent: bad window");
  std::vector<double> logs;
  for (int i = i_min; i <= i_max; ++i) {
    const double v = diagonal[static_cast<std::size_t>(i - 1)];
    if (!(v > 0.0)) throw FitError("fit_exponent: non-positive diagonal entry in fit window");
    logs.push_back(std::log(v));
  }
  return fit_from_logs(logs, i_min, i_max);
}

ExponentFit fit_exponent(const std::vector<BigFloat>& diagonal, int i_min, int i_max) {
  if (i_min < 1 || i_max > static_cast<int>(diagonal.size()) || i_min >= i_max)
    throw UsageError("fit_exponent: bad window");
  std::vector<double> logs;
  for (int i = i_min; i <= i_max; ++i) {
    const BigFloat& v = diagonal[static_cast<std::size_t>(i - 1)];
    if (v.sign() <= 0) throw FitError("fit_exponent: non-positive diagonal entry in fit window");
    logs.push_back(v.log().to_double());
  }
  return fit_from_logs(logs, i_min, i_max);
}

SpectrumResult compute_spectrum(const Params& params, int L, int fit_nmax, unsigned prec) {
  params.validate();
  if (params.mode != Mode::interior)
    throw UsageError("compute_spectrum: interior mode only");

  SpectrumResult result;
  TridiagonalOp op = params.driver == DriverKind::brownian
                         ? TridiagonalOp::brownian(params.q, params.kappa)
                         : TridiagonalOp::levy(params.q, params.eta);
  if (params.driver == DriverKind::brownian) {
    result.formula = beta_formula(params.q, params.kappa, prec);
    result.flags = spectrum_flags(params.q, params.kappa);
  } else {
    result.flags = "levy+conjectural";
  }
  result.eigen = top_eigenvalue(op, L);
  if (fit_nmax > 0) {
    const auto mf = solve_two_point_float(params, fit_nmax, prec);
    std::vector<BigFloat> diag;
    diag.reserve(static_cast<std::size_t>(fit_nmax));
    for (long i = 1; i <= fit_nmax; ++i) diag.push_back(mf.entry(i, i));
    result.fit = fit_exponent(diag, std::max(2, fit_nmax / 2), fit_nmax);
  }
  return result;
}

bool on_qkappa_family(const Rational& q, const Rational& kappa) {
  return 8 * kappa * q == (kappa + 2) * (kappa + 6);
}

std::optional<std::pair<int, int>> truncation_family_point(const Rational& q,
                                                           const Rational& kappa,
                                                           int search_Nmax) {
  for (int N = 1; N <= search_Nmax; ++N)
    for (int n = 1; n <= N; ++n) {
      const FamilyPoint p = family_point(N, n);
      if (p.q == q && p.kappa == kappa) return std::make_pair(N, n);
    }
  return std::nullopt;
}

std::string spectrum_flags(const Rational& q, const Rational& kappa) {
  std::string flags;
  if (on_qkappa_family(q, kappa)) flags = "closed-form-family";
  if (auto p = truncation_family_point(q, kappa)) {
    if (!flags.empty()) flags += "+";
    flags += "truncation-family(N=" + std::to_string(p->first) +
             ",n=" + std::to_string(p->second) + ")";
  }
  if (flags.empty()) flags = "conjectural";
  return flags;
}

}  // namespace slecoef
