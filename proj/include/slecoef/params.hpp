#pragma once

// Evolution parameters: the exponent q, a Brownian kappa or a Levy
// characteristic sequence eta, and the interior/exterior mode.

#include <string>
#include <vector>

#include "slecoef/errors.hpp"
#include "slecoef/rational.hpp"

namespace slecoef {

enum class Mode { interior, exterior };

inline const char* mode_name(Mode m) { return m == Mode::interior ? "interior" : "exterior"; }

// Symmetric characteristic sequence eta_0, eta_1, ... with eta_{-n} = eta_n,
// eta_0 = 0 and eta_n >= 0. Either an explicit finite table (access beyond
// the table is an error, never extrapolated) or the closed form c * n^alpha.
class EtaSequence {
 public:
  EtaSequence() = default;

  static EtaSequence from_table(std::vector<Rational> values);
  static EtaSequence stable(const Rational& c, const Rational& alpha);

  // eta_{|n|}; EtaRangeError beyond a finite table, DomainError when the
  // stable form c * n^alpha is irrational at this n.
  Rational at(long n) const;

  bool is_stable() const { return stable_; }
  const Rational& stable_c() const { return c_; }
  const Rational& stable_alpha() const { return alpha_; }
  const std::vector<Rational>& table() const { return table_; }

  // Largest index answerable without error; -1 means unbounded (stable form
  // with integer alpha).
  long max_index() const;

  bool covers(long n) const {
    long m = max_index();
    return m < 0 || n <= m;
  }

 private:
  bool stable_ = false;
  Rational c_, alpha_;
  std::vector<Rational> table_;
};

enum class DriverKind { brownian, levy };

struct Params {
  Rational q;
  Mode mode = Mode::interior;
  DriverKind driver = DriverKind::brownian;
  Rational kappa;   // Brownian driver
  EtaSequence eta;  // Levy driver

  static Params brownian(const Rational& q, const Rational& kappa, Mode mode = Mode::interior);
  static Params levy(const Rational& q, EtaSequence eta);

  void validate() const;
};

// Reads {"eta": ["0", "3", ...]} or {"stable": {"c": "1", "alpha": "2"}}.
EtaSequence load_eta_file(const std::string& path);
EtaSequence parse_eta_json(const std::string& text);
std::string eta_to_json(const EtaSequence& eta);

}  // namespace slecoef
