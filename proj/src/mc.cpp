#include "slecoef/mc.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

namespace slecoef {

namespace {

constexpr double kBlowupNormSq = 1e24;  // |u| > 1e12

// splitmix64; per-path streams start from a mixed (seed, path) state, so
// substreams are disjoint up to a vanishing collision probability.
struct PathRng {
  std::uint64_t state;

  PathRng(std::uint64_t seed, long path) {
    state = mix(seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(path) + 1));
    state = mix(state ^ seed);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  double spare = 0.0;
  bool has_spare = false;
  double gaussian() {
    if (has_spare) {
      has_spare = false;
      return spare;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double phi = 2.0 * std::numbers::pi * uniform();
    spare = r * std::sin(phi);
    has_spare = true;
    return r * std::cos(phi);
  }

  // Standard symmetric alpha-stable variate (Chambers-Mallows-Stuck).
  double stable(double alpha) {
    const double U = std::numbers::pi * (uniform() - 0.5);
    if (alpha == 1.0) return std::tan(U);
    const double E = -std::log(uniform());
    const double s = std::sin(alpha * U) / std::pow(std::cos(U), 1.0 / alpha);
    return s * std::pow(std::cos((1.0 - alpha) * U) / E, (1.0 - alpha) / alpha);
  }
};

struct PathResult {
  bool blew_up = false;
  std::vector<double> stats;  // |u_n|^2 for n=2..nmax, then the fourth pairs
};

PathResult integrate_path(const McConfig& cfg, long path) {
  PathRng rng(cfg.seed, path);
  const int nmax = cfg.nmax;
  std::vector<std::complex<double>> u(static_cast<std::size_t>(nmax) + 1, 0.0);
  std::vector<std::complex<double>> rhs(static_cast<std::size_t>(nmax) + 1, 0.0);
  u[1] = 1.0;
  double theta = 0.0;
  const long steps = std::lround(cfg.horizon / cfg.dt);
  const double inc_scale = cfg.driver == McConfig::Driver::brownian
                               ? std::sqrt(cfg.kappa * cfg.dt)
                               : std::pow(cfg.c * cfg.dt, 1.0 / cfg.alpha);

  PathResult out;
  for (long s = 0; s < steps; ++s) {
    coefficient_rhs(u, theta, rhs);
    for (int m = 2; m <= nmax; ++m) {
      u[static_cast<std::size_t>(m)] += cfg.dt * rhs[static_cast<std::size_t>(m)];
      const double nsq = std::norm(u[static_cast<std::size_t>(m)]);
      if (!(nsq < kBlowupNormSq)) {
        out.blew_up = true;
        return out;
      }
    }
    theta += inc_scale * (cfg.driver == McConfig::Driver::brownian ? rng.gaussian()
                                                                   : rng.stable(cfg.alpha));
  }

  out.stats.reserve(static_cast<std::size_t>(nmax - 1) + cfg.fourth_pairs.size());
  for (int n = 2; n <= nmax; ++n) out.stats.push_back(std::norm(u[static_cast<std::size_t>(n)]));
  for (const auto& [i, j] : cfg.fourth_pairs)
    out.stats.push_back(std::norm(u[static_cast<std::size_t>(i)]) *
                        std::norm(u[static_cast<std::size_t>(j)]));
  return out;
}

// Neumaier compensated sum; accumulation order is fixed (path order), so the
// reduction is independent of the thread count.
struct CompensatedSum {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

MomentEstimates reduce(const McConfig& cfg, const std::vector<PathResult>& results) {
  const std::size_t nstats = static_cast<std::size_t>(cfg.nmax - 1) + cfg.fourth_pairs.size();
  long used = 0, discarded = 0;
  for (const auto& r : results) (r.blew_up ? discarded : used)++;
  if (used == 0 || discarded * 100 > cfg.paths)
    throw McError("mc_run: " + std::to_string(discarded) + " of " + std::to_string(cfg.paths) +
                  " paths blew up (limit 1%)");

  std::vector<double> means(nstats), errs(nstats);
  for (std::size_t s = 0; s < nstats; ++s) {
    CompensatedSum acc;
    for (const auto& r : results)
      if (!r.blew_up) acc.add(r.stats[s]);
    const double mean = acc.value() / static_cast<double>(used);
    CompensatedSum var;
    for (const auto& r : results)
      if (!r.blew_up) var.add((r.stats[s] - mean) * (r.stats[s] - mean));
    means[s] = mean;
    errs[s] = used > 1 ? std::sqrt(var.value() / (static_cast<double>(used) - 1) /
                                   static_cast<double>(used))
                       : 0.0;
  }

  MomentEstimates est;
  est.config = cfg;
  est.paths_used = used;
  est.discarded = discarded;
  std::size_t s = 0;
  for (int n = 2; n <= cfg.nmax; ++n, ++s) est.second.push_back({n, means[s], errs[s]});
  for (const auto& [i, j] : cfg.fourth_pairs) {
    est.fourth.push_back({i, j, means[s], errs[s]});
    ++s;
  }
  return est;
}

}  // namespace

void McConfig::validate() const {
  if (nmax < 2) throw UsageError("mc: nmax must be >= 2");
  if (!(dt > 0.0) || dt > 1e-2) throw UsageError("mc: dt must lie in (0, 1e-2]");
  if (horizon < 8.0) throw UsageError("mc: horizon T must be >= 8");
  if (paths < 100) throw UsageError("mc: need at least 100 paths");
  if (driver == Driver::brownian) {
    if (kappa < 0.0) throw UsageError("mc: kappa must be non-negative");
  } else {
    if (!(alpha > 0.0) || alpha > 2.0) throw UsageError("mc: stable alpha must lie in (0, 2]");
    if (!(c > 0.0)) throw UsageError("mc: stable scale c must be positive");
  }
  for (const auto& [i, j] : fourth_pairs)
    if (i < 1 || j < 1 || i > nmax || j > nmax)
      throw UsageError("mc: fourth-moment pair outside 1..nmax");
}

void coefficient_rhs(std::span<const std::complex<double>> u, double theta,
                     std::span<std::complex<double>> out) {
  const int nmax = static_cast<int>(u.size()) - 1;
  // e^{-ik theta} powers, k = 1..nmax-1.
  std::vector<std::complex<double>> pw(static_cast<std::size_t>(nmax));
  const std::complex<double> e1(std::cos(theta), -std::sin(theta));
  if (nmax >= 2) {
    pw[1] = e1;
    for (int k = 2; k < nmax; ++k) pw[static_cast<std::size_t>(k)] = pw[static_cast<std::size_t>(k - 1)] * e1;
  }
  for (int m = 2; m <= nmax; ++m) {
    std::complex<double> acc = (1.0 - m) * u[static_cast<std::size_t>(m)];
    for (int k = 1; k < m; ++k)
      acc -= 2.0 * static_cast<double>(m - k) * u[static_cast<std::size_t>(m - k)] *
             pw[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(m)] = acc;
  }
}

MomentEstimates mc_run(const McConfig& config) {
  config.validate();
  std::vector<PathResult> results(static_cast<std::size_t>(config.paths));
#pragma omp parallel for schedule(dynamic, 16)
  for (long p = 0; p < config.paths; ++p)
    results[static_cast<std::size_t>(p)] = integrate_path(config, p);
  return reduce(config, results);
}

MomentEstimates mc_run_serial(const McConfig& config) {
  config.validate();
  std::vector<PathResult> results(static_cast<std::size_t>(config.paths));
  for (long p = 0; p < config.paths; ++p)
    results[static_cast<std::size_t>(p)] = integrate_path(config, p);
  return reduce(config, results);
}

std::string estimates_to_json(const MomentEstimates& e) {
  nlohmann::json cfg;
  if (e.config.driver == McConfig::Driver::brownian) {
    cfg["driver"] = "brownian";
    cfg["kappa"] = e.config.kappa;
  } else {
    cfg["driver"] = "stable";
    cfg["alpha"] = e.config.alpha;
    cfg["c"] = e.config.c;
  }
  cfg["nmax"] = e.config.nmax;
  cfg["dt"] = e.config.dt;
  cfg["T"] = e.config.horizon;
  cfg["paths"] = e.config.paths;
  cfg["seed"] = e.config.seed;
  if (!e.config.fourth_pairs.empty()) {
    auto pairs = nlohmann::json::array();
    for (const auto& [i, j] : e.config.fourth_pairs) pairs.push_back({i, j});
    cfg["fourth_pairs"] = std::move(pairs);
  }

  auto second = nlohmann::json::array();
  for (const auto& s : e.second)
    second.push_back({{"n", s.n},
                      {"mean", s.mean},
                      {"stderr", s.std_error},
                      {"paths", e.paths_used},
                      {"discarded", e.discarded}});
  nlohmann::json j;
  j["config"] = std::move(cfg);
  j["estimates"] = std::move(second);
  if (e.config.driver == McConfig::Driver::stable)
    j["note"] = "alpha-stable driver: estimates are numerical evidence only";
  if (!e.fourth.empty()) {
    auto fourth = nlohmann::json::array();
    for (const auto& f : e.fourth)
      fourth.push_back({{"i", f.i}, {"j", f.j}, {"mean", f.mean}, {"stderr", f.std_error}});
    j["fourth"] = std::move(fourth);
  }
  j["discarded"] = e.discarded;
  return j.dump(2) + "\n";
}

}  // namespace slecoef
