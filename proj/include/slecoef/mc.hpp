#pragma once

// Stochastic oracle: Euler-Maruyama integration of the truncated coefficient
// ODE system of the radial Loewner chain, driven by Brownian or symmetric
// alpha-stable increments. Estimates the stationary coefficient moments
// with standard errors. Paths use disjoint deterministic RNG substreams, so
// results are bit-identical for a given seed regardless of thread count.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slecoef/errors.hpp"

namespace slecoef {

struct McConfig {
  enum class Driver { brownian, stable };

  Driver driver = Driver::brownian;
  double kappa = 6.0;   // Brownian variance rate
  double alpha = 0.0;   // stable index in (0, 2]
  double c = 0.0;       // stable scale: eta(tau) = c |tau|^alpha
  int nmax = 5;
  double dt = 1e-3;
  double horizon = 12.0;  // T
  long paths = 10000;
  std::uint64_t seed = 0;
  std::vector<std::pair<int, int>> fourth_pairs;  // <|u_i|^2 |u_j|^2> requests

  void validate() const;
};

struct SecondMomentEstimate {
  int n = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

struct FourthMomentEstimate {
  int i = 0, j = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

struct MomentEstimates {
  std::vector<SecondMomentEstimate> second;  // n = 2..nmax
  std::vector<FourthMomentEstimate> fourth;
  long paths_used = 0;
  long discarded = 0;
  McConfig config;
};

// Time derivatives of u_2..u_nmax for the normalized interior map
// e^t F(w,t) = w + sum_j u_j w^j at driving angle theta:
//   du_m/dt = (1-m) u_m - 2 sum_{k=1}^{m-1} (m-k) u_{m-k} e^{-ik theta},
// with u_1 = 1 held fixed. u and out are indexed 1..nmax; out[0], out[1]
// are left untouched.
void coefficient_rhs(std::span<const std::complex<double>> u, double theta,
                     std::span<std::complex<double>> out);

MomentEstimates mc_run(const McConfig& config);         // OpenMP over paths
MomentEstimates mc_run_serial(const McConfig& config);  // reference

std::string estimates_to_json(const MomentEstimates& e);

}  // namespace slecoef
