#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "slecoef/mc.hpp"

using namespace slecoef;

namespace {

McConfig base_config(double kappa) {
  McConfig cfg;
  cfg.kappa = kappa;
  cfg.nmax = 3;
  cfg.dt = 5e-3;
  cfg.horizon = 10.0;
  cfg.paths = 3000;
  cfg.seed = 11;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  McConfig cfg = base_config(4.0);
  cfg.dt = 0.05;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg = base_config(4.0);
  cfg.horizon = 4.0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg = base_config(4.0);
  cfg.paths = 10;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg = base_config(4.0);
  cfg.driver = McConfig::Driver::stable;
  cfg.alpha = 2.5;
  cfg.c = 1.0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
}

TEST_CASE("coefficient rhs") {
  // m=2: du2/dt = -u2 - 2 e^{-i theta}.
  std::vector<std::complex<double>> u(4, 0.0), out(4, 0.0);
  u[1] = 1.0;
  u[2] = {0.3, 0.1};
  u[3] = {-0.2, 0.4};
  const double theta = 0.7;
  coefficient_rhs(u, theta, out);
  const std::complex<double> e1(std::cos(theta), -std::sin(theta));
  const std::complex<double> want2 = -u[2] - 2.0 * e1;
  CHECK(std::abs(out[2] - want2) < 1e-15);
  // m=3: du3/dt = -2 u3 - 2(2 u2 e^{-i theta} + u1 e^{-2 i theta}).
  const std::complex<double> want3 = -2.0 * u[3] - 2.0 * (2.0 * u[2] * e1 + e1 * e1);
  CHECK(std::abs(out[3] - want3) < 1e-15);
}

TEST_CASE("frozen driving relaxes u2 to -2") {
  // kappa = 0 freezes theta at 0; u2 solves du2/dt = -u2 - 2.
  McConfig cfg = base_config(0.0);
  cfg.nmax = 2;
  cfg.paths = 100;
  cfg.dt = 1e-2;
  cfg.horizon = 12.0;
  const auto est = mc_run(cfg);
  // |u2(T)|^2 -> 4 with O(e^{-T}) transient and O(dt) scheme error.
  CHECK(est.second[0].mean == doctest::Approx(4.0).epsilon(0.02));
  CHECK(est.second[0].std_error == doctest::Approx(0.0));
}

TEST_CASE("seed reproducibility and serial/parallel equality") {
  const McConfig cfg = base_config(6.0);
  const auto a = mc_run(cfg);
  const auto b = mc_run(cfg);
  const auto s = mc_run_serial(cfg);
  REQUIRE(a.second.size() == b.second.size());
  for (std::size_t i = 0; i < a.second.size(); ++i) {
    CHECK(a.second[i].mean == b.second[i].mean);
    CHECK(a.second[i].std_error == b.second[i].std_error);
    CHECK(a.second[i].mean == s.second[i].mean);
    CHECK(a.second[i].std_error == s.second[i].std_error);
  }
  CHECK(estimates_to_json(a) == estimates_to_json(s));
}

TEST_CASE("stationary second moment matches 8/(2+kappa)") {
  for (double kappa : {2.0, 4.0}) {
    McConfig cfg = base_config(kappa);
    cfg.nmax = 2;
    const auto est = mc_run(cfg);
    const double want = 8.0 / (2.0 + kappa);
    CHECK(std::abs(est.second[0].mean - want) < 3 * est.second[0].std_error);
  }
}

TEST_CASE("dt refinement stays within one standard error") {
  McConfig coarse = base_config(4.0);
  coarse.nmax = 3;
  McConfig fine = coarse;
  fine.dt = coarse.dt / 2;
  const auto a = mc_run(coarse);
  const auto b = mc_run(fine);
  for (std::size_t i = 0; i < a.second.size(); ++i)
    CHECK(std::abs(a.second[i].mean - b.second[i].mean) <
          a.second[i].std_error + b.second[i].std_error);
}

TEST_CASE("stationarity: horizon extension is statistically invisible") {
  McConfig t0 = base_config(6.0);
  McConfig t2 = t0;
  t2.horizon = t0.horizon + 2.0;
  const auto a = mc_run(t0);
  const auto b = mc_run(t2);
  for (std::size_t i = 0; i < a.second.size(); ++i)
    CHECK(std::abs(a.second[i].mean - b.second[i].mean) <
          3 * (a.second[i].std_error + b.second[i].std_error));
}

TEST_CASE("stable driver at alpha=2 reproduces Brownian moments") {
  // eta(tau) = c |tau|^2 with c = kappa/2 is the Brownian case.
  McConfig cfg = base_config(0.0);
  cfg.driver = McConfig::Driver::stable;
  cfg.alpha = 2.0;
  cfg.c = 3.0;  // kappa = 6
  cfg.nmax = 2;
  const auto est = mc_run(cfg);
  CHECK(std::abs(est.second[0].mean - 1.0) < 3 * est.second[0].std_error);
}

TEST_CASE("heavy-tail paths are discarded with accounting") {
  McConfig cfg = base_config(0.0);
  cfg.driver = McConfig::Driver::stable;
  cfg.alpha = 1.2;
  cfg.c = 1.0;
  cfg.nmax = 2;
  cfg.paths = 500;
  try {
    const auto est = mc_run(cfg);
    CHECK(est.paths_used + est.discarded == cfg.paths);
    CHECK(est.discarded * 100 <= cfg.paths);
  } catch (const McError&) {
    // more than 1% of paths blew up; the error is the documented contract
  }
}
