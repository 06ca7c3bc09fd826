#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "tripent/csv.hpp"
#include "tripent/report.hpp"
#include "tripent/triple_gaussian.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(TRIPENT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kConfigs = TRIPENT_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "tripent_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("e3f") {
  auto r = cli("e3f --sigma-u 1 --sigma-v 1");
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == 0.0);
  r = cli("e3f --sigma-u 10 --sigma-v 1");
  CHECK(std::stod(r.out) == doctest::Approx(2.6870).epsilon(2e-4));
  CHECK(cli("e3f --sigma-u 1 --sigma-v 10").out == r.out);

  const auto j = cli("e3f --sigma-u 10 --sigma-v 1 --json");
  CHECK(j.code == 0);
  const auto rep = tripent::report_from_json(nlohmann::json::parse(j.out));
  CHECK(*rep.exact_e3f_gebits == doctest::Approx(2.68684569691792).epsilon(1e-12));
  CHECK(rep.inputs.at("sigma_u") == 10.0);
  CHECK(tripent::serialize_report(rep) == j.out);

  CHECK(cli("e3f --sigma-u -1 --sigma-v 1").code == 2);
  CHECK(cli("e3f --sigma-u 1").code == 2);
}

TEST_CASE("sweep") {
  const auto dir = scratch("sweep");
  const std::string base = "sweep --config " + kConfigs + "/worked_example.cfg --sigma-p-min 1e-6 --sigma-p-max 1e-2";
  CHECK(cli(base + " --points 2 --out " + (dir / "a.csv").string()).code == 0);
  const std::string two = slurp(dir / "a.csv");
  CHECK(std::count(two.begin(), two.end(), '\n') == 3);

  CHECK(cli(base + " --points 200 --out " + (dir / "b.csv").string()).code == 0);
  CHECK(cli(base + " --points 200 --out " + (dir / "c.csv").string()).code == 0);
  const std::string b = slurp(dir / "b.csv");
  CHECK(b == slurp(dir / "c.csv"));

  // final row: witness - exact near 1 - 2/ln 2
  const auto last_line_start = b.rfind('\n', b.size() - 2) + 1;
  std::stringstream row(b.substr(last_line_start));
  std::string f0, f1, f2;
  std::getline(row, f0, ',');
  std::getline(row, f1, ',');
  std::getline(row, f2);
  CHECK(std::stod(f1) - std::stod(f2) == doctest::Approx(-1.88539).epsilon(0.01));

  CHECK(cli("sweep --config /nonexistent.cfg --sigma-p-min 1e-6 --sigma-p-max 1e-3").code == 2);
  CHECK(cli("sweep --config " + kConfigs + "/worked_example.cfg --sigma-p-min 1e-3 --sigma-p-max 1e-6").code == 2);
}

TEST_CASE("rate") {
  const std::string cfg = kConfigs + "/fused_silica.cfg";
  const auto j = nlohmann::json::parse(cli("rate --config " + cfg + " --json").out);
  CHECK(j.at("triplets_per_minute").get<double>() == doctest::Approx(9.98).epsilon(0.05));
  const auto q = nlohmann::json::parse(cli("rate --config " + cfg + " --json --qpm-order 1").out);
  CHECK(q.at("triplets_per_minute").get<double>() / j.at("triplets_per_minute").get<double>() ==
        doctest::Approx(0.40528473456935).epsilon(1e-10));
  const auto z = nlohmann::json::parse(cli("rate --config " + cfg + " --json --pump-power 0").out);
  CHECK(z.at("triplets_per_second").get<double>() == 0.0);
  CHECK(cli("rate --config " + cfg + " --qpm-order 0").code == 2);
}

TEST_CASE("simulate is reproducible and writes its files") {
  const auto a = scratch("sim_a");
  const auto b = scratch("sim_b");
  const std::string args = "simulate --sigma-u 10 --sigma-v 1 --n 20000 --depth 6 --seed 4 --bootstrap 4 --out ";
  CHECK(cli(args + a.string()).code == 0);
  CHECK(cli(args + b.string()).code == 0);
  for (const char* f : {"report.json", "position_tree.csv", "momentum_tree.csv"}) {
    CHECK(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  const auto rep = tripent::report_from_json(nlohmann::json::parse(slurp(a / "report.json")));
  CHECK(rep.inputs.at("n_samples") == 20000);
  CHECK(rep.inputs.at("threshold") == 16);
  CHECK(rep.witness_gebits <= *rep.exact_e3f_gebits);
  CHECK(slurp(a / "position_tree.csv").rfind("path,count\n,20000\n", 0) == 0);

  CHECK(cli("simulate --sigma-u 10 --n 100").code == 2);
  CHECK(cli("simulate --sigma-u 10 --sigma-v 1 --n 100 --depth 0").code == 2);

  const auto from_cfg = cli("simulate --config " + kConfigs + "/worked_example.cfg --n 5000 --depth 4 --bootstrap 0");
  CHECK(from_cfg.code == 0);
  CHECK(nlohmann::json::parse(from_cfg.out).at("inputs").contains("source"));
}

TEST_CASE("validate") {
  const auto r = cli("validate --dim 2 --trials 100 --seed 3");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("violations_above_tolerance") == 0);
  CHECK(cli("validate --dim 2 --trials 100 --seed 3").out == r.out);
  CHECK(cli("validate --dim 12").code == 2);
}

TEST_CASE("witness from sample files") {
  const auto dir = scratch("witness");
  const auto s = tripent::TripleGaussianState::symmetric(10.0, 1.0);
  tripent::write_file_atomic(dir / "x.csv",
                             tripent::format_samples_csv(tripent::sample_positions(s, 20000, 1), tripent::Basis::position));
  tripent::write_file_atomic(
      dir / "k.csv",
      tripent::format_samples_csv(tripent::sample_positions(tripent::to_momentum(s), 20000, 2), tripent::Basis::momentum));
  const std::string files = "--x-samples " + (dir / "x.csv").string() + " --k-samples " + (dir / "k.csv").string();

  const auto r = cli("witness " + files + " --bootstrap 8");
  CHECK(r.code == 0);
  const auto rep = tripent::report_from_json(nlohmann::json::parse(r.out));
  // analytic value: -log2(3 sqrt(2) e) + log2(20) = 0.79420
  CHECK(std::abs(rep.witness_gebits - 0.79420) < 0.1);

  const auto o = cli("witness " + files + " --bootstrap 0 --optimize");
  CHECK(o.code == 0);
  CHECK(nlohmann::json::parse(o.out).at("inputs").at("optimizer").is_object());

  // swapped files have the wrong headers
  CHECK(cli("witness --x-samples " + (dir / "k.csv").string() + " --k-samples " + (dir / "x.csv").string()).code == 2);
  CHECK(cli("witness " + files + " --eta 1,0,1").code == 2);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(cli("").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("--version").code == 0);
}

}  // TEST_SUITE
