#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

namespace {

struct CmdResult {
  int status = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(RSE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult result;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, n);
  const int rc = pclose(pipe);
  result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return result;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

TEST_CASE("cli steady: reference system, json and text") {
  const CmdResult json = run_cli("steady --a 0.4 --c 1 --q 0.2 --r 0.5 --json");
  REQUIRE(json.status == 0);
  const auto parsed = nlohmann::json::parse(json.out);
  CHECK(std::abs(parsed["p"].get<double>() - 0.2248) < 5e-5);
  CHECK(std::abs(parsed["k_gain"].get<double>() - 0.3102) < 5e-5);
  CHECK(std::abs(parsed["sigma_z2"].get<double>() - 0.7248) < 5e-5);

  const CmdResult text = run_cli("steady --a 0.4 --c 1 --q 0.2 --r 0.5");
  REQUIRE(text.status == 0);
  CHECK(text.out.find("p        = 0.224813380856") != std::string::npos);
  CHECK(text.out.find("k_gain   = 0.310167260696") != std::string::npos);
}

TEST_CASE("cli steady: degenerate dynamics and invalid parameters") {
  const CmdResult ok = run_cli("steady --a 0 --c 1 --q 0.7 --r 0.5 --json");
  REQUIRE(ok.status == 0);
  CHECK(std::abs(nlohmann::json::parse(ok.out)["p"].get<double>() - 0.7) < 1e-12);

  CHECK(run_cli("steady --r 0").status != 0);
  CHECK(run_cli("steady --a 1.5").status != 0);
}

TEST_CASE("cli solve: strict strategy") {
  const CmdResult res = run_cli("solve --strategy strict");
  REQUIRE(res.status == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["T"].get<double>() == 0.0);
  CHECK(j["S"].get<double>() == -1.0);
  CHECK(j["J"].get<double>() == 4.0);
  CHECK(std::abs(j["eta"].get<double>() - 1.23631791291) < 1e-9);
  CHECK(j["kl"].get<double>() == 0.0);
  CHECK(j["strategy"].get<std::string>() == "strict");
}

TEST_CASE("cli solve: optimal at eps = 0.5 and equivalence to strict at eps = 0") {
  const CmdResult half = run_cli("solve --strategy optimal --epsilon 0.5");
  REQUIRE(half.status == 0);
  const auto j = nlohmann::json::parse(half.out);
  CHECK(std::abs(j["eta"].get<double>() - 1.51364346222) < 1e-9);
  CHECK(std::abs(j["kl"].get<double>() - 0.5) < 1e-9);

  const auto strict = nlohmann::json::parse(run_cli("solve --strategy strict").out);
  const auto opt0 = nlohmann::json::parse(run_cli("solve --strategy optimal --epsilon 0").out);
  for (const char* key : {"T", "S", "J", "eta", "kl"})
    CHECK(strict[key].get<double>() == opt0[key].get<double>());

  CHECK(run_cli("solve --strategy optimal --epsilon -0.5").status != 0);
  CHECK(run_cli("solve --strategy bogus").status != 0);
}

TEST_CASE("cli kl: rate and finite-horizon report") {
  const auto zero = nlohmann::json::parse(run_cli("kl --t 0 --s -1").out);
  CHECK(zero["kl_rate"].get<double>() == 0.0);

  const auto rate = nlohmann::json::parse(run_cli("kl --t 0.6 --s -0.5").out);
  CHECK(std::abs(rate["kl_rate"].get<double>() - 0.38845968056) < 1e-9);

  const auto horizon = nlohmann::json::parse(run_cli("kl --t 0.6 --s -0.5 --horizon 500").out);
  CHECK(std::abs(horizon["finite_horizon_kl"].get<double>() - 194.119976999) < 1e-6);
  CHECK(horizon["per_step"].get<double>() <= horizon["kl_rate"].get<double>());

  CHECK(run_cli("kl --t 1.0 --s -1").status != 0);
  CHECK(run_cli("kl --t 0.5 --s 0").status != 0);
}

TEST_CASE("cli sweep: reference range to a file") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "rse_sweep_test.csv").string();
  const CmdResult res = run_cli("sweep --epsilons 0:1:0.1 --out " + path);
  REQUIRE(res.status == 0);

  std::ifstream file(path);
  REQUIRE(file.good());
  std::string line;
  REQUIRE(std::getline(file, line));
  CHECK(line ==
        "epsilon,t_opt,s_opt,j_opt,eta_optimal_analytic,eta_baseline_analytic");
  int rows = 0;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    REQUIRE(cols.size() == 6);
    const double eta_opt = std::stod(cols[4]);
    const double eta_base = std::stod(cols[5]);
    CHECK(eta_opt >= eta_base);
    CHECK(eta_base >= 1.0);
    ++rows;
  }
  CHECK(rows == 11);
  std::filesystem::remove(path);
}

TEST_CASE("cli sweep: empty range emits only the header") {
  const CmdResult res = run_cli("sweep --epsilons 0.5:0.4:0.1");
  REQUIRE(res.status == 0);
  const auto lines = split(res.out, '\n');
  REQUIRE(!lines.empty());
  CHECK(lines[0].rfind("epsilon,", 0) == 0);
  int rows = 0;
  for (size_t i = 1; i < lines.size(); ++i)
    if (!lines[i].empty()) ++rows;
  CHECK(rows == 0);
}

TEST_CASE("cli sweep: unwritable output path fails") {
  CHECK(run_cli("sweep --epsilons 0:0.2:0.1 --out /nonexistent-dir/out.csv").status != 0);
}

TEST_CASE("cli sweep: monte carlo columns") {
  const CmdResult res =
      run_cli("sweep --epsilons 0:0.5:0.5 --mc --runs 200 --horizon 120 --seed 9");
  REQUIRE(res.status == 0);
  const auto lines = split(res.out, '\n');
  REQUIRE(lines.size() >= 3);
  CHECK(lines[0] ==
        "epsilon,t_opt,s_opt,j_opt,eta_optimal_analytic,eta_baseline_analytic,"
        "eta_optimal_mc,eta_baseline_mc,stderr_eta_optimal_mc,stderr_eta_baseline_mc");
  CHECK(split(lines[1], ',').size() == 10);
}

TEST_CASE("cli simulate: null attack, determinism, infeasible inputs") {
  const std::string cmd = "simulate --t 0 --s 1 --runs 400 --horizon 200 --seed 7";
  const CmdResult first = run_cli(cmd);
  REQUIRE(first.status == 0);
  const auto j = nlohmann::json::parse(first.out);
  CHECK(std::abs(j["eta_hat"].get<double>() - 1.0) < 0.05);
  CHECK(j["rng_family"].get<std::string>() == "philox4x64-10");
  CHECK(j["seed"].get<std::uint64_t>() == 7);
  CHECK(j["runs"].get<std::uint64_t>() == 400);
  CHECK(j["horizon"].get<long>() == 200);

  const CmdResult second = run_cli(cmd);
  CHECK(first.out == second.out);  // byte-identical under a fixed seed

  CHECK(run_cli("simulate --t 1.2 --s 1 --runs 10 --horizon 10").status != 0);
  CHECK(run_cli("simulate --runs 10 --horizon 10").status != 0);  // attack unspecified
}

TEST_CASE("cli simulate: strategy plumbing") {
  const CmdResult res =
      run_cli("simulate --strategy strict --runs 800 --horizon 300 --seed 3 --burn-in 20");
  REQUIRE(res.status == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["T"].get<double>() == 0.0);
  CHECK(j["S"].get<double>() == -1.0);
  CHECK(std::abs(j["eta_hat"].get<double>() - 1.2363) < 0.05);
}
