#include "slecoef/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

namespace slecoef {

namespace {

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static Rational from_rational(const Rational& r, unsigned) { return r; }
  static Rational zero(unsigned) { return Rational(0); }
  static bool is_zero(const Rational& v) { return v.is_zero(); }
};

template <>
struct ScalarOps<BigFloat> {
  static BigFloat from_rational(const Rational& r, unsigned prec) { return BigFloat(r, prec); }
  static BigFloat zero(unsigned prec) { return BigFloat(prec); }
  static bool is_zero(const BigFloat& v) { return v.is_zero(); }
};

// sigma_{i,j} = i j rho_{i,j}, zero outside the stored index set. Index 0
// contributes nothing in exterior mode: the derivative series has no 1/w
// term, which the combinatorial factor encodes as sigma = 0.
template <class S>
S sigma_at(const MomentMatrixT<S>& m, long i, long j, unsigned prec) {
  const Mode mode = m.mode();
  auto absent = [&](long x) {
    if (mode == Mode::interior) return x < 1;
    return x < -1 || x == 0;
  };
  if (absent(i) || absent(j) || !m.stored(i, j)) return ScalarOps<S>::zero(prec);
  return ScalarOps<S>::from_rational(Rational(i * j), prec) * m.entry(i, j);
}

void check_eta_coverage(const Params& params, int nmax) {
  if (params.driver == DriverKind::levy && !params.eta.covers(nmax + 1))
    throw EtaRangeError("solve_two_point: eta table must cover |i-j| <= nmax+1 = " +
                        std::to_string(nmax + 1));
}

template <class S>
MomentMatrixT<S> fill_two_point(const Params& params, int nmax, unsigned prec) {
  params.validate();
  check_eta_coverage(params, nmax);
  const Stencil st = hand_stencil(params);
  MomentMatrixT<S> m(params, nmax, prec);
  const long seed = m.seed_index();

  for (long i : m.indices()) {
    for (long j : m.indices()) {
      if (i == seed && j == seed) {
        m.entry_mut(i, j) = ScalarOps<S>::from_rational(Rational(1), prec);
        continue;
      }
      S acc = ScalarOps<S>::zero(prec);
      for (int n = 0; n <= 2; ++n)
        for (int k = 0; k <= 2; ++k) {
          if (n == 0 && k == 0) continue;
          S s = sigma_at(m, i - n, j - k, prec);
          if (ScalarOps<S>::is_zero(s)) continue;
          const Rational c = st.coeff(i, j, n, k);
          if (c.is_zero()) continue;
          acc += ScalarOps<S>::from_rational(c, prec) * s;
        }
      const Rational pivot = st.coeff(i, j, 0, 0);
      if (pivot.is_zero())
        throw SingularPivot("solve_two_point: vanishing pivot C^{0,0} at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")",
                            {i}, {j});
      const S sigma = -acc / ScalarOps<S>::from_rational(pivot, prec);
      m.entry_mut(i, j) = sigma / ScalarOps<S>::from_rational(Rational(i * j), prec);
    }
  }
  return m;
}

// Equation labels whose stencil equation must hold. In exterior mode this
// includes the 0-labels: they reference only row/column -1 and are satisfied
// automatically by the true solution, so checking them here guards the fill.
std::vector<long> equation_labels(const MomentMatrix& m) {
  std::vector<long> labels;
  if (m.mode() == Mode::interior) {
    for (long i = 1; i <= m.nmax(); ++i) labels.push_back(i);
  } else {
    for (long i = -1; i <= m.nmax(); ++i) labels.push_back(i);
  }
  return labels;
}

template <class S>
S equation_residual(const MomentMatrixT<S>& m, const Stencil& st, long i, long j, unsigned prec) {
  S acc = ScalarOps<S>::zero(prec);
  for (int n = 0; n <= 2; ++n)
    for (int k = 0; k <= 2; ++k) {
      S s = sigma_at(m, i - n, j - k, prec);
      if (ScalarOps<S>::is_zero(s)) continue;
      acc += ScalarOps<S>::from_rational(st.coeff(i, j, n, k), prec) * s;
    }
  return acc;
}

}  // namespace

MomentMatrix solve_two_point(const Params& params, int nmax) {
  return fill_two_point<Rational>(params, nmax, 0);
}

MomentMatrixF solve_two_point_float(const Params& params, int nmax, unsigned prec) {
  return fill_two_point<BigFloat>(params, nmax, prec);
}

namespace {

// Largest index distance carrying a nonzero entry; the nmax sentinel means
// no banded structure is visible at this truncation.
template <class S, class NonZero>
int band_of(const MomentMatrixT<S>& m, NonZero nonzero) {
  long band = 0;
  for (long i : m.indices())
    for (long j : m.indices())
      if (nonzero(m.entry(i, j))) band = std::max(band, std::labs(i - j));
  const long max_distance = m.indices().back() - m.indices().front();
  if (band >= max_distance) return m.nmax();
  return static_cast<int>(band);
}

}  // namespace

int bandwidth(const MomentMatrix& m) {
  return band_of(m, [](const Rational& v) { return !v.is_zero(); });
}

int bandwidth(const MomentMatrixF& m, double tol) {
  return band_of(m, [tol](const BigFloat& v) { return std::abs(v.to_double()) > tol; });
}

std::vector<Rational> first_row(const Params& params, int jmax) {
  params.validate();
  if (params.mode != Mode::interior) throw UsageError("first_row: interior mode only");
  if (jmax < 1) throw UsageError("first_row: jmax must be >= 1");
  if (params.driver == DriverKind::levy && !params.eta.covers(jmax + 1))
    throw EtaRangeError("first_row: eta table must cover indices up to jmax+1");
  const Stencil st = hand_stencil(params);

  // sigma_{1,j}: rows 0 and -1 vanish, leaving a three-term recurrence.
  std::vector<Rational> sigma(static_cast<std::size_t>(jmax) + 1);
  sigma[1] = Rational(1);
  for (long j = 2; j <= jmax; ++j) {
    Rational acc = st.coeff(1, j, 0, 1) * sigma[static_cast<std::size_t>(j - 1)];
    if (j >= 3) acc += st.coeff(1, j, 0, 2) * sigma[static_cast<std::size_t>(j - 2)];
    const Rational pivot = st.coeff(1, j, 0, 0);
    if (pivot.is_zero())
      throw SingularPivot("first_row: vanishing pivot at (1," + std::to_string(j) + ")", {1}, {j});
    sigma[static_cast<std::size_t>(j)] = -acc / pivot;
  }

  std::vector<Rational> rho;
  rho.reserve(static_cast<std::size_t>(jmax));
  for (long j = 1; j <= jmax; ++j)
    rho.push_back(sigma[static_cast<std::size_t>(j)] / Rational(j));
  return rho;
}

bool residuals_vanish(const MomentMatrix& m) {
  const Stencil st = hand_stencil(m.params());
  for (long i : equation_labels(m))
    for (long j : equation_labels(m))
      if (!equation_residual(m, st, i, j, 0).is_zero()) return false;
  return true;
}

double max_residual(const MomentMatrixF& m) {
  const Stencil st = hand_stencil(m.params());
  double worst = 0.0;
  for (long i : m.indices())
    for (long j : m.indices())
      worst = std::max(worst,
                       std::abs(equation_residual(m, st, i, j, m.precision()).to_double()));
  return worst;
}

bool symmetric(const MomentMatrix& m) {
  for (long i : m.indices())
    for (long j : m.indices())
      if (m.entry(i, j) != m.entry(j, i)) return false;
  return true;
}

namespace {

template <class S, class Render>
nlohmann::json matrix_json(const MomentMatrixT<S>& m, const std::string& backend, Render render) {
  nlohmann::json j;
  j["mode"] = mode_name(m.mode());
  j["q"] = m.params().q.str();
  if (m.params().driver == DriverKind::brownian)
    j["kappa"] = m.params().kappa.str();
  else
    j["eta"] = nlohmann::json::parse(eta_to_json(m.params().eta));
  j["nmax"] = m.nmax();
  j["backend"] = backend;
  auto entries = nlohmann::json::array();
  for (long i : m.indices())
    for (long j2 : m.indices())
      if (j2 >= i) entries.push_back({i, j2, render(m.entry(i, j2))});
  j["entries"] = std::move(entries);
  return j;
}

template <class S, class Render>
std::string matrix_csv(const MomentMatrixT<S>& m, Render render) {
  std::ostringstream os;
  os << "i,j,value\n";
  for (long i : m.indices())
    for (long j : m.indices())
      if (j >= i) os << i << "," << j << "," << render(m.entry(i, j)) << "\n";
  return os.str();
}

}  // namespace

std::string moment_matrix_to_json(const MomentMatrix& m) {
  return matrix_json(m, "exact", [](const Rational& r) { return r.str(); }).dump(2) + "\n";
}

std::string moment_matrix_to_json(const MomentMatrixF& m) {
  const std::string backend = "float:" + std::to_string(m.precision());
  return matrix_json(m, backend, [](const BigFloat& v) { return v.str(); }).dump(2) + "\n";
}

std::string moment_matrix_to_csv(const MomentMatrix& m) {
  return matrix_csv(m, [](const Rational& r) { return r.str(); });
}

std::string moment_matrix_to_csv(const MomentMatrixF& m) {
  return matrix_csv(m, [](const BigFloat& v) { return v.str(); });
}

MomentMatrix moment_matrix_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("moment matrix: invalid JSON: ") + e.what());
  }
  if (j.at("backend").get<std::string>() != "exact")
    throw UsageError("moment matrix: only the exact backend round-trips through JSON");
  const Mode mode = j.at("mode").get<std::string>() == "interior" ? Mode::interior : Mode::exterior;
  const Rational q = Rational::parse(j.at("q").get<std::string>());
  Params params;
  if (j.contains("kappa")) {
    params = Params::brownian(q, Rational::parse(j.at("kappa").get<std::string>()), mode);
  } else {
    params = Params::levy(q, parse_eta_json(j.at("eta").dump()));
  }
  MomentMatrix m(params, j.at("nmax").get<int>(), 0);
  for (const auto& e : j.at("entries")) {
    const long i = e.at(0).get<long>();
    const long j2 = e.at(1).get<long>();
    const Rational v = Rational::parse(e.at(2).get<std::string>());
    m.entry_mut(i, j2) = v;
    m.entry_mut(j2, i) = v;
  }
  return m;
}

}  // namespace slecoef
