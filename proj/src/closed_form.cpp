#include "slecoef/closed_form.hpp"

#include "json.hpp"
#include "slecoef/biseries.hpp"

namespace slecoef {

ClosedFormSpec ClosedFormSpec::family(const Rational& kappa) {
  if (kappa.sign() <= 0) throw DomainError("closed form: kappa must be positive");
  const Rational six_k = kappa + 6;
  ClosedFormSpec s;
  s.kappa = kappa;
  s.a = six_k / (2 * kappa);
  s.b = -(six_k * six_k) / (8 * kappa);
  s.q = (kappa + 2) * six_k / (8 * kappa);
  return s;
}

MomentMatrix expand_closed_form(const ClosedFormSpec& spec, int nmax) {
  if (spec.kappa.sign() <= 0) throw DomainError("closed form: kappa must be positive");
  if (nmax < 1) throw UsageError("closed form: nmax must be >= 1");
  const int order = nmax - 1;

  // Each factor is a one-line binomial series, so expand directly instead of
  // going through biseries_pow.
  BiSeries in_w(order), in_wbar(order), diag(order);
  for (int s = 0; s <= order; ++s) {
    const Rational c =
        binom_general(spec.a, static_cast<unsigned long>(s)) * Rational(-1).pow_int(s);
    in_w.at(s, 0) = c;
    in_wbar.at(0, s) = c;
    diag.at(s, s) = binom_general(spec.b, static_cast<unsigned long>(s)) * Rational(-1).pow_int(s);
  }
  const BiSeries series = biseries_mul(biseries_mul(in_w, in_wbar), diag);

  MomentMatrix m(Params::brownian(spec.q, spec.kappa, Mode::interior), nmax, 0);
  for (long i = 1; i <= nmax; ++i)
    for (long j = 1; j <= nmax; ++j)
      m.entry_mut(i, j) =
          series.at(static_cast<int>(i - 1), static_cast<int>(j - 1)) / Rational(i * j);
  return m;
}

CompareReport compare(const MomentMatrix& a, const MomentMatrix& b) {
  if (a.mode() != b.mode() || a.nmax() != b.nmax())
    throw UsageError("compare: incompatible shapes");
  CompareReport r;
  for (long i : a.indices())
    for (long j : a.indices())
      if (a.entry(i, j) != b.entry(i, j)) r.diffs.push_back({i, j, a.entry(i, j), b.entry(i, j)});
  return r;
}

std::string report_to_json(const CompareReport& r) {
  auto arr = nlohmann::json::array();
  for (const auto& d : r.diffs)
    arr.push_back({{"i", d.i}, {"j", d.j}, {"lhs", d.lhs.str()}, {"rhs", d.rhs.str()}});
  return arr.dump(2) + "\n";
}

}  // namespace slecoef
