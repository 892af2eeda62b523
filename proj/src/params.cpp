#include "slecoef/params.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace slecoef {

EtaSequence EtaSequence::from_table(std::vector<Rational> values) {
  if (values.empty()) throw UsageError("eta table: empty");
  if (!values[0].is_zero()) throw DomainError("eta table: eta_0 must be 0");
  for (const auto& v : values)
    if (v.sign() < 0) throw DomainError("eta table: entries must be non-negative");
  EtaSequence e;
  e.table_ = std::move(values);
  return e;
}

EtaSequence EtaSequence::stable(const Rational& c, const Rational& alpha) {
  if (c.sign() < 0) throw DomainError("stable eta: c must be non-negative");
  if (alpha.sign() < 0) throw DomainError("stable eta: alpha must be non-negative");
  EtaSequence e;
  e.stable_ = true;
  e.c_ = c;
  e.alpha_ = alpha;
  return e;
}

Rational EtaSequence::at(long n) const {
  const long m = n < 0 ? -n : n;
  if (m == 0) return Rational(0);
  if (!stable_) {
    if (static_cast<std::size_t>(m) >= table_.size())
      throw EtaRangeError("eta table: index " + std::to_string(m) + " beyond supplied range " +
                          std::to_string(table_.size() - 1));
    return table_[static_cast<std::size_t>(m)];
  }
  // c * m^alpha with alpha = p/r; rational only when m^p is a perfect r-th
  // power.
  const mpz_class p = alpha_.num();
  const mpz_class r = alpha_.den();
  if (!p.fits_ulong_p() || !r.fits_ulong_p())
    throw DomainError("stable eta: alpha too large");
  mpz_class mp;
  mpz_ui_pow_ui(mp.get_mpz_t(), static_cast<unsigned long>(m), p.get_ui());
  if (r == 1) return c_ * Rational(mp);
  mpz_class root;
  const int exact = mpz_root(root.get_mpz_t(), mp.get_mpz_t(), r.get_ui());
  if (!exact)
    throw DomainError("stable eta: c*n^alpha is irrational at n=" + std::to_string(m));
  return c_ * Rational(root);
}

long EtaSequence::max_index() const {
  if (stable_) return -1;
  return static_cast<long>(table_.size()) - 1;
}

Params Params::brownian(const Rational& q, const Rational& kappa, Mode mode) {
  Params p;
  p.q = q;
  p.mode = mode;
  p.driver = DriverKind::brownian;
  p.kappa = kappa;
  p.validate();
  return p;
}

Params Params::levy(const Rational& q, EtaSequence eta) {
  Params p;
  p.q = q;
  p.mode = Mode::interior;
  p.driver = DriverKind::levy;
  p.eta = std::move(eta);
  p.validate();
  return p;
}

void Params::validate() const {
  if (driver == DriverKind::brownian && kappa.sign() < 0)
    throw DomainError("Params: kappa must be non-negative");
  if (mode == Mode::exterior && driver != DriverKind::brownian)
    throw UsageError("Params: exterior mode requires a Brownian driver");
}

EtaSequence parse_eta_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("eta file: invalid JSON: ") + e.what());
  }
  if (j.contains("eta")) {
    std::vector<Rational> values;
    for (const auto& s : j.at("eta")) values.push_back(Rational::parse(s.get<std::string>()));
    return EtaSequence::from_table(std::move(values));
  }
  if (j.contains("stable")) {
    const auto& s = j.at("stable");
    return EtaSequence::stable(Rational::parse(s.at("c").get<std::string>()),
                               Rational::parse(s.at("alpha").get<std::string>()));
  }
  throw ParseError("eta file: expected an \"eta\" table or a \"stable\" generator");
}

EtaSequence load_eta_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open eta file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_eta_json(ss.str());
}

std::string eta_to_json(const EtaSequence& eta) {
  nlohmann::json j;
  if (eta.is_stable()) {
    j["stable"] = {{"c", eta.stable_c().str()}, {"alpha", eta.stable_alpha().str()}};
  } else {
    auto arr = nlohmann::json::array();
    for (const auto& v : eta.table()) arr.push_back(v.str());
    j["eta"] = arr;
  }
  return j.dump();
}

}  // namespace slecoef
