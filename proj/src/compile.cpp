#include "slecoef/op_compile.hpp"

namespace slecoef {

Polynomial Polynomial::times_var_minus_one(int var, int power) const {
  Polynomial out = *this;
  for (int t = 0; t < power; ++t) {
    Polynomial next;
    for (const auto& [e, c] : out.terms) {
      Exponents up = e;
      up[static_cast<std::size_t>(var)] += 1;
      next.add(up, c);
      next.add(e, -c);
    }
    out = std::move(next);
  }
  return out;
}

OperatorDescription loewner_operator(std::vector<Rational> q, const Rational& kappa, Mode mode) {
  OperatorDescription op;
  op.rank = static_cast<int>(q.size());
  op.mode = mode;
  op.q = std::move(q);
  op.kappa = kappa;
  const int n = op.rank;
  const int nvars = 2 * n;
  const Rational half_kappa = kappa / 2;

  auto plain = [&](const Rational& coef, std::vector<int> derivs) {
    op.terms.push_back({coef, Polynomial::one(nvars), std::vector<int>(nvars, 0), std::move(derivs)});
  };

  // kappa/2 [ sum_{a<b} (w_a d_a - w_b d_b)^2 + same for bars
  //           - sum_{a,b} (w_a d_a - wbar_b dbar_b)^2 ]
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      plain(half_kappa, {a, a});
      plain(-half_kappa, {a, b});
      plain(-half_kappa, {b, a});
      plain(half_kappa, {b, b});
      plain(half_kappa, {n + a, n + a});
      plain(-half_kappa, {n + a, n + b});
      plain(-half_kappa, {n + b, n + a});
      plain(half_kappa, {n + b, n + b});
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      plain(-half_kappa, {a, a});
      plain(half_kappa, {a, n + b});
      plain(half_kappa, {n + b, a});
      plain(-half_kappa, {n + b, n + b});
    }

  // sum_m (w_m+1)/(w_m-1) w_m d_m, and the bar copy.
  for (int v = 0; v < nvars; ++v) {
    Polynomial num;
    Exponents lin(nvars, 0);
    lin[static_cast<std::size_t>(v)] = 1;
    num.add(lin, Rational(1));
    num.add(Exponents(nvars, 0), Rational(1));
    std::vector<int> pole(nvars, 0);
    pole[static_cast<std::size_t>(v)] = 1;
    op.terms.push_back({Rational(1), std::move(num), std::move(pole), {v}});
  }

  // - sum_m q_m (1/(w_m-1)^2 + 1/(wbar_m-1)^2 - 1)
  for (int m = 0; m < n; ++m) {
    for (int v : {m, n + m}) {
      std::vector<int> pole(nvars, 0);
      pole[static_cast<std::size_t>(v)] = 2;
      op.terms.push_back({-op.q[static_cast<std::size_t>(m)], Polynomial::one(nvars), std::move(pole), {}});
    }
    plain(op.q[static_cast<std::size_t>(m)], {});
  }

  return op;
}

CompiledStencil compile_stencil(const OperatorDescription& op) {
  const int n = op.rank;
  const int nvars = 2 * n;
  std::size_t table_size = 1;
  for (int v = 0; v < nvars; ++v) table_size *= 3;

  CompiledStencil cs;
  cs.rank_ = n;
  cs.mode_ = op.mode;

  std::vector<OpTerm> all = op.terms;
  // Move the eigenvalue side over: L[rho] - sigma (sum q) rho = 0.
  all.push_back({-op.rhs_scale(), Polynomial::one(nvars), std::vector<int>(nvars, 0), {}});

  for (const auto& term : all) {
    if (term.derivs.size() > 2) throw CompileError("operator term has derivation order > 2");
    Polynomial cleared = term.numerator;
    for (int v = 0; v < nvars; ++v) {
      const int pole = term.pole[static_cast<std::size_t>(v)];
      if (pole < 0 || pole > 2)
        throw CompileError("pole order at w=1 outside [0,2]");
      cleared = cleared.times_var_minus_one(v, 2 - pole);
    }
    CompiledStencil::Term ct;
    ct.coef = term.coef;
    ct.derivs = term.derivs;
    ct.table.assign(table_size, Rational(0));
    for (const auto& [e, c] : cleared.terms) {
      std::size_t idx = 0, stride = 1;
      for (int v = 0; v < nvars; ++v) {
        const int deg = e[static_cast<std::size_t>(v)];
        if (deg < 0 || deg > 2)
          throw CompileError("cleared prefactor spans more than 3 offsets per variable");
        idx += static_cast<std::size_t>(deg) * stride;
        stride *= 3;
      }
      ct.table[idx] += c;
    }
    cs.terms_.push_back(std::move(ct));
  }
  return cs;
}

Rational CompiledStencil::coeff(const long* i, const long* j, const int* l, const int* k) const {
  const int n = rank_;
  const bool interior = mode_ == Mode::interior;
  // Offset (l,k) selects the prefactor monomial that shifts the source
  // monomial onto the equation label: exponent l for power series, 2-l for
  // the inverse-power expansion.
  std::size_t idx = 0, stride = 1;
  for (int v = 0; v < n; ++v) {
    const int deg = interior ? l[v] : 2 - l[v];
    idx += static_cast<std::size_t>(deg) * stride;
    stride *= 3;
  }
  for (int v = 0; v < n; ++v) {
    const int deg = interior ? k[v] : 2 - k[v];
    idx += static_cast<std::size_t>(deg) * stride;
    stride *= 3;
  }

  Rational total(0);
  for (const auto& term : terms_) {
    const Rational& c = term.table[idx];
    if (c.is_zero()) continue;
    Rational val = term.coef * c;
    for (int v : term.derivs) {
      long src;
      if (v < n)
        src = i[v] - l[v];
      else
        src = j[v - n] - k[v - n];
      // Euler derivation eigenvalue on the source monomial.
      const long eig = interior ? src - 1 : -src - 1;
      val *= Rational(eig);
    }
    total += val;
  }
  return total;
}

Stencil CompiledStencil::as_stencil() const {
  CompiledStencil copy = *this;
  return Stencil(rank_, [copy](const long* i, const long* j, const int* l, const int* k) {
    return copy.coeff(i, j, l, k);
  });
}

}  // namespace slecoef
