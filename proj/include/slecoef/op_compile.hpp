#pragma once

// Mechanical 2n-point operator to stencil compiler. The operator is a sum
// of terms (rational prefactor) x (composition of Euler derivations); the
// compiler clears Prod_m (w_m-1)^2 (wbar_m-1)^2 from the eigen-equation
// L[rho] = sigma (sum q_i) rho, applies each term to a general monomial and
// collects the 3^(2n)-point stencil. All arithmetic is exact.

#include <map>
#include <vector>

#include "slecoef/params.hpp"
#include "slecoef/rational.hpp"
#include "slecoef/stencil.hpp"

namespace slecoef {

// Ring variable ids: v in [0, rank) is w_{v+1}, v in [rank, 2*rank) is
// wbar_{v-rank+1}.
using Exponents = std::vector<int>;

struct Polynomial {
  std::map<Exponents, Rational> terms;

  static Polynomial one(int nvars) {
    Polynomial p;
    p.terms[Exponents(nvars, 0)] = Rational(1);
    return p;
  }
  void add(const Exponents& e, const Rational& c) {
    auto [it, fresh] = terms.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  // Multiply by (x_var - 1)^power.
  Polynomial times_var_minus_one(int var, int power) const;
};

struct OpTerm {
  Rational coef;           // scalar multiplier
  Polynomial numerator;    // polynomial part of the prefactor
  std::vector<int> pole;   // pole order at x_v = 1, per variable
  std::vector<int> derivs; // Euler derivation variable ids, composition order immaterial
};

struct OperatorDescription {
  int rank = 1;   // point pairs; 2*rank ring variables
  Mode mode = Mode::interior;
  std::vector<Rational> q;  // per pair
  Rational kappa;
  std::vector<OpTerm> terms;

  int sigma() const { return mode == Mode::interior ? -1 : 1; }
  Rational rhs_scale() const {
    Rational s(0);
    for (const auto& qi : q) s += qi;
    return Rational(sigma()) * s;
  }
};

// The Loewner-chain correlator operator for n point pairs.
OperatorDescription loewner_operator(std::vector<Rational> q, const Rational& kappa, Mode mode);

class CompiledStencil {
 public:
  int rank() const { return rank_; }
  Mode mode() const { return mode_; }

  Rational coeff(const long* i, const long* j, const int* l, const int* k) const;
  Rational coeff1(long i, long j, int l, int k) const { return coeff(&i, &j, &l, &k); }

  Stencil as_stencil() const;

 private:
  friend CompiledStencil compile_stencil(const OperatorDescription& op);

  struct Term {
    Rational coef;
    std::vector<Rational> table;  // dense over {0,1,2}^(2*rank)
    std::vector<int> derivs;
  };

  int rank_ = 1;
  Mode mode_ = Mode::interior;
  std::vector<Term> terms_;
};

// Clears poles, expands, and checks that the cleared prefactors span at most
// degree 2 per variable (pole order > 2 or wider spans are a compile error).
CompiledStencil compile_stencil(const OperatorDescription& op);

}  // namespace slecoef
