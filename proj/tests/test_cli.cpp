#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kBin = SLECOEF_BIN_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("slecoef-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

int run(const std::string& args, const fs::path& cache_dir) {
  const std::string cmd = "SLECOEF_CACHE_DIR=" + cache_dir.string() + " " + kBin + " " + args;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Entry lookup in the moments JSON artifact.
std::string entry_of(const nlohmann::json& artifact, long i, long j) {
  for (const auto& e : artifact.at("entries"))
    if (e.at(0).get<long>() == i && e.at(1).get<long>() == j) return e.at(2).get<std::string>();
  return "<missing>";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

TEST_CASE("moments: kappa=6 diagonal is all ones") {
  TempDir tmp;
  const fs::path out = tmp.path / "m.json";
  const int rc = run("moments --mode interior --q 2 --kappa 6 --nmax 10 --out " + out.string() +
                         " > " + (tmp.path / "summary.txt").string(),
                     tmp.path / "cache");
  REQUIRE(rc == 0);
  const auto artifact = nlohmann::json::parse(slurp(out));
  CHECK(artifact.at("backend") == "exact");
  for (long n = 1; n <= 10; ++n) CHECK(entry_of(artifact, n, n) == "1");
  const std::string summary = slurp(tmp.path / "summary.txt");
  CHECK(summary.find("bandwidth=1") != std::string::npos);
  CHECK(summary.find("n rho_nn") != std::string::npos);
}

TEST_CASE("moments: exterior entry and bandwidth report") {
  TempDir tmp;
  const fs::path out = tmp.path / "e.json";
  REQUIRE(run("moments --mode exterior --q 2 --kappa 2 --nmax 2 --out " + out.string(),
              tmp.path / "cache") == 0);
  const auto artifact = nlohmann::json::parse(slurp(out));
  CHECK(entry_of(artifact, 1, 1) == "1/3");
  CHECK(entry_of(artifact, -1, -1) == "1");

  REQUIRE(run("moments --q 2 --kappa 10/9 --nmax 12 --out " + (tmp.path / "b.json").string() +
                  " > " + (tmp.path / "s.txt").string(),
              tmp.path / "cache") == 0);
  CHECK(slurp(tmp.path / "s.txt").find("bandwidth=3") != std::string::npos);
}

TEST_CASE("moments: cache hit is byte-identical to fresh computation") {
  TempDir tmp;
  const fs::path cache = tmp.path / "cache";
  const std::string flags = "moments --q 2 --kappa 17/5 --nmax 12 --out ";
  REQUIRE(run(flags + (tmp.path / "fresh.json").string() + " --no-cache", cache) == 0);
  REQUIRE(run(flags + (tmp.path / "first.json").string(), cache) == 0);
  REQUIRE(run(flags + (tmp.path / "hit.json").string(), cache) == 0);
  const std::string fresh = slurp(tmp.path / "fresh.json");
  CHECK(fresh == slurp(tmp.path / "first.json"));
  CHECK(fresh == slurp(tmp.path / "hit.json"));
  CHECK(!fs::is_empty(cache));
}

TEST_CASE("moments: csv format and eta handling") {
  TempDir tmp;
  const fs::path out = tmp.path / "m.csv";
  REQUIRE(run("moments --q 2 --kappa 6 --nmax 3 --format csv --out " + out.string(),
              tmp.path / "cache") == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("i,j,value\n", 0) == 0);
  CHECK(csv.find("1,2,-1/2") != std::string::npos);

  std::ofstream eta(tmp.path / "eta.json");
  eta << "{\"eta\": [\"0\", \"3\", \"12\", \"27\", \"48\", \"75\"]}";
  eta.close();
  CHECK(run("moments --q 2 --kappa 6 --eta " + (tmp.path / "eta.json").string() + " --nmax 4",
            tmp.path / "cache") == 2);
  CHECK(run("moments --q 2 --eta " + (tmp.path / "eta.json").string() + " --nmax 4 --out " +
                (tmp.path / "levy.json").string(),
            tmp.path / "cache") == 0);
  const auto levy = nlohmann::json::parse(slurp(tmp.path / "levy.json"));
  CHECK(levy.contains("eta"));
  for (long n = 1; n <= 4; ++n) CHECK(entry_of(levy, n, n) == "1");  // eta_1 = 3 pattern

  std::ofstream stable(tmp.path / "stable.json");
  stable << "{\"stable\": {\"c\": \"1\", \"alpha\": \"2\"}}";  // Brownian kappa = 2
  stable.close();
  CHECK(run("moments --q 2 --eta " + (tmp.path / "stable.json").string() + " --nmax 5 --out " +
                (tmp.path / "st.json").string(),
            tmp.path / "cache") == 0);
  const auto st = nlohmann::json::parse(slurp(tmp.path / "st.json"));
  for (long n = 1; n <= 5; ++n) CHECK(entry_of(st, n, n) == std::to_string(n));
}

TEST_CASE("moments: float backend") {
  TempDir tmp;
  const fs::path out = tmp.path / "f.json";
  REQUIRE(run("moments --q 2 --kappa 6 --nmax 4 --backend float:96 --out " + out.string(),
              tmp.path / "cache") == 0);
  const auto artifact = nlohmann::json::parse(slurp(out));
  CHECK(artifact.at("backend") == "float:96");
}

TEST_CASE("spectrum: eigenvalue route and family enumeration") {
  TempDir tmp;
  const fs::path out = tmp.path / "s.csv";
  REQUIRE(run("spectrum --q 2 --kappa 6 --L 100 --out " + out.string(), tmp.path / "cache") == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("q,kappa,beta_formula,beta_eigen,beta_fit,L,fit_window,flags\n", 0) == 0);
  std::stringstream ss(csv);
  std::string header, row;
  std::getline(ss, header);
  std::getline(ss, row);
  const auto fields = split_csv_line(row);
  REQUIRE(fields.size() >= 8);
  CHECK(fields[0] == "2");
  CHECK(fields[1] == "6");
  CHECK(std::stod(fields[2]) == doctest::Approx(3.0));
  CHECK(std::stod(fields[3]) == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(fields[7].find("truncation-family") != std::string::npos);

  REQUIRE(run("spectrum --q 2 --kappa 2 --L 60 --fit-nmax 60 --out " +
                  (tmp.path / "fit.csv").string(),
              tmp.path / "cache") == 0);
  std::stringstream fs(slurp(tmp.path / "fit.csv"));
  std::getline(fs, header);
  std::getline(fs, row);
  const auto ffields = split_csv_line(row);
  REQUIRE(ffields.size() >= 8);
  CHECK(std::stod(ffields[4]) == doctest::Approx(4.0).epsilon(0.02));
  CHECK(ffields[6] == "30:60");

  REQUIRE(run("spectrum --family 2 --out " + (tmp.path / "fam.csv").string(),
              tmp.path / "cache") == 0);
  const std::string fam = slurp(tmp.path / "fam.csv");
  CHECK(fam.find("2,6,") != std::string::npos);  // (1,1)
  CHECK(fam.find("2,2,") != std::string::npos);  // (2,1) and (2,2)

  REQUIRE(run("spectrum --q 2 --kappa 7 --L 40 --out " + (tmp.path / "c.csv").string(),
              tmp.path / "cache") == 0);
  CHECK(slurp(tmp.path / "c.csv").find("conjectural") != std::string::npos);
}

TEST_CASE("mc: determinism and --check against the exact solver") {
  TempDir tmp;
  const std::string mc_flags =
      "mc --kappa 4 --nmax 3 --paths 400 --dt 0.01 --T 8 --seed 42 --out ";
  REQUIRE(run(mc_flags + (tmp.path / "a.json").string() + " --no-cache", tmp.path / "cache") == 0);
  REQUIRE(run(mc_flags + (tmp.path / "b.json").string() + " --no-cache", tmp.path / "cache") == 0);
  CHECK(slurp(tmp.path / "a.json") == slurp(tmp.path / "b.json"));

  REQUIRE(run("moments --q 2 --kappa 4 --nmax 3 --out " + (tmp.path / "ref.json").string(),
              tmp.path / "cache") == 0);
  CHECK(run("mc --kappa 4 --nmax 3 --paths 4000 --dt 0.005 --T 10 --seed 42 --check " +
                (tmp.path / "ref.json").string() + " --out " + (tmp.path / "c.json").string(),
            tmp.path / "cache") == 0);
}

TEST_CASE("verify: suite output and exit codes") {
  TempDir tmp;
  CHECK(run("verify theorem1 > " + (tmp.path / "v.txt").string(), tmp.path / "cache") == 0);
  const std::string log = slurp(tmp.path / "v.txt");
  CHECK(log.find("[PASS] theorem1-kappa6") != std::string::npos);
  CHECK(log.find("[PASS] theorem1-kappa2") != std::string::npos);
  CHECK(run("verify no-such-suite", tmp.path / "cache") == 2);
}

TEST_CASE("usage errors exit with code 2, numeric failures with 3") {
  TempDir tmp;
  CHECK(run("moments --q 2 --nmax 3", tmp.path / "cache") == 2);  // missing driver
  CHECK(run("moments --q x --kappa 6 --nmax 3", tmp.path / "cache") == 2);
  CHECK(run("moments --q 2 --kappa 6 --backend float:10", tmp.path / "cache") == 2);

  // eta table too short for the requested fill: solver error, exit 3.
  std::ofstream eta(tmp.path / "short.json");
  eta << "{\"eta\": [\"0\", \"3\"]}";
  eta.close();
  CHECK(run("moments --q 2 --eta " + (tmp.path / "short.json").string() + " --nmax 8",
            tmp.path / "cache") == 3);
}
