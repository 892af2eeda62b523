#include "slecoef/fourpoint.hpp"

#include <algorithm>

namespace slecoef {

namespace {

std::vector<MultiMatrix::Key> graded_lex_lattice(int degree) {
  std::vector<MultiMatrix::Key> keys;
  for (long i1 = 1; i1 + 3 <= degree; ++i1)
    for (long i2 = 1; i1 + i2 + 2 <= degree; ++i2)
      for (long j1 = 1; i1 + i2 + j1 + 1 <= degree; ++j1)
        for (long j2 = 1; i1 + i2 + j1 + j2 <= degree; ++j2) keys.push_back({i1, i2, j1, j2});
  std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
    const long ta = a[0] + a[1] + a[2] + a[3];
    const long tb = b[0] + b[1] + b[2] + b[3];
    if (ta != tb) return ta < tb;
    return a < b;
  });
  return keys;
}

}  // namespace

std::vector<MultiMatrix::Balanced> MultiMatrix::balanced_entries() const {
  std::vector<Balanced> out;
  for (const auto& [k, v] : entries_)
    if (k[0] + k[1] == k[2] + k[3]) out.push_back({k, v});
  return out;
}

MultiMatrix solve_four_point(const Rational& q1, const Rational& q2, const Rational& kappa,
                             int degree) {
  if (degree < 4) throw UsageError("solve_four_point: degree must be >= 4");
  if (kappa.sign() < 0) throw DomainError("solve_four_point: kappa must be non-negative");
  const CompiledStencil st =
      compile_stencil(loewner_operator({q1, q2}, kappa, Mode::interior));

  MultiMatrix m(q1, q2, kappa, degree);
  auto sigma = [&m](long i1, long i2, long j1, long j2) -> Rational {
    if (i1 < 1 || i2 < 1 || j1 < 1 || j2 < 1) return Rational(0);
    auto it = m.entries_.find({i1, i2, j1, j2});
    if (it == m.entries_.end()) return Rational(0);
    return Rational(i1 * i2 * j1 * j2) * it->second;
  };

  for (const auto& key : graded_lex_lattice(degree)) {
    const long iv[2] = {key[0], key[1]};
    const long jv[2] = {key[2], key[3]};
    if (key == MultiMatrix::Key{1, 1, 1, 1}) {
      m.entries_[key] = Rational(1);
      continue;
    }
    Rational acc(0);
    int off[4];
    for (off[0] = 0; off[0] <= 2; ++off[0])
      for (off[1] = 0; off[1] <= 2; ++off[1])
        for (off[2] = 0; off[2] <= 2; ++off[2])
          for (off[3] = 0; off[3] <= 2; ++off[3]) {
            if (off[0] == 0 && off[1] == 0 && off[2] == 0 && off[3] == 0) continue;
            const Rational s =
                sigma(key[0] - off[0], key[1] - off[1], key[2] - off[2], key[3] - off[3]);
            if (s.is_zero()) continue;
            acc += st.coeff(iv, jv, off, off + 2) * s;
          }
    const int zero_off[4] = {0, 0, 0, 0};
    const Rational pivot = st.coeff(iv, jv, zero_off, zero_off + 2);
    if (pivot.is_zero())
      throw SingularPivot("solve_four_point: vanishing pivot at (" + std::to_string(key[0]) + "," +
                              std::to_string(key[1]) + ";" + std::to_string(key[2]) + "," +
                              std::to_string(key[3]) + ")",
                          {key[0], key[1]}, {key[2], key[3]});
    const Rational sig = -acc / pivot;
    m.entries_[key] = sig / Rational(key[0] * key[1] * key[2] * key[3]);
  }
  return m;
}

}  // namespace slecoef
