#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tor/one_dim.hpp"
#include "tor/problem.hpp"
#include "tor/solver.hpp"

// End-to-end checks of the command line surface: exit codes, the
// solution.json schema, CSV shapes and byte-for-byte determinism.

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

const std::string kCli = TOR_CLI_PATH;

fs::path temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "tor_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >" + (temp_dir() / "stdout.txt").string() +
                          " 2>" + (temp_dir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

size_t count_lines(const std::string& text) {
  size_t n = 0;
  for (char c : text) {
    if (c == '\n') ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("solve: rest case writes a one-dim solution") {
  const fs::path out = temp_dir() / "rest.json";
  REQUIRE(run("solve --speed 0 --alpha 0 --json " + out.string()) == 0);
  const json j = json::parse(slurp(out));
  CHECK(j["branch"] == "one-dim");
  CHECK(std::abs(j["t_f"].get<double>() - 2.414213562373095) < 1e-12);
  CHECK(std::abs(j["one_dim"]["lambda"].get<double>() - (2.0 + std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("solve: steering case round-trips its residuals") {
  const fs::path out = temp_dir() / "steer.json";
  const fs::path csv = temp_dir() / "steer.csv";
  REQUIRE(run("solve --speed 3 --alpha 0.25pi --json " + out.string() + " --traj " +
              csv.string() + " --samples 512") == 0);

  const json j = json::parse(slurp(out));
  CHECK(j["branch"] == "steering");
  const double mu = j["mu"].get<double>();
  const double sigma = j["sigma"].get<double>();
  const tor::CanonicalProblem p{j["problem"]["speed"].get<double>(),
                                j["problem"]["alpha"].get<double>()};
  const auto [r1, r2] = tor::residuals(mu, sigma, p);
  CHECK(std::abs(r1 - j["residuals"]["r1"].get<double>()) < 1e-12);
  CHECK(std::abs(r2 - j["residuals"]["r2"].get<double>()) < 1e-12);
  CHECK(j["residuals"]["terminal_position"].get<double>() < 1e-8);
  CHECK(j["phi"].get<double>() >= 0.0);
  CHECK(j["phi"].get<double>() < 2.0 * M_PI);

  const std::string body = slurp(csv);
  CHECK(count_lines(body) == 513);  // header + samples
  CHECK(body.rfind("t,x,y,vx,vy,ux,uy,speed\n", 0) == 0);
  std::istringstream rows(body);
  std::string header, first;
  std::getline(rows, header);
  std::getline(rows, first);
  CHECK(first.rfind("0,0,0,", 0) == 0);  // t = 0 at the origin
}

TEST_CASE("solve: invalid arguments exit with 1") {
  CHECK(run("solve --speed -1 --alpha 0") == 1);
  CHECK(run("solve --speed 1 --alpha nonsense") == 1);
  CHECK(run("solve") == 1);
  CHECK(run("bogus-subcommand") == 1);
}

TEST_CASE("sweep: shape, dispatch rows and determinism") {
  const fs::path a = temp_dir() / "sweep_a.csv";
  const fs::path b = temp_dir() / "sweep_b.csv";
  REQUIRE(run("sweep --speeds 1,0.5 --alpha-grid 9 --out " + a.string()) == 0);
  REQUIRE(run("sweep --speeds 1,0.5 --alpha-grid 9 --out " + b.string()) == 0);
  const std::string body = slurp(a);
  CHECK(body == slurp(b));  // byte-identical reruns
  CHECK(count_lines(body) == 19);
  CHECK(body.rfind("speed,alpha,mu,sigma,t_f,phi,psi,iters,residual,status\n", 0) == 0);

  // Rows ordered by (speed, alpha); the alpha = 0 row of speed 0.5 carries
  // the scalar-branch values mu = lambda, sigma = 1.
  std::istringstream rows(body);
  std::string line;
  std::getline(rows, line);
  std::getline(rows, line);
  std::istringstream cells(line);
  std::string cell;
  std::getline(cells, cell, ',');
  CHECK(cell == "0.5");
  std::getline(cells, cell, ',');
  CHECK(cell == "0");
  std::getline(cells, cell, ',');
  CHECK(std::abs(std::stod(cell) - tor::solve_one_dim(0.5).lambda) < 1e-12);
  std::getline(cells, cell, ',');
  CHECK(cell == "1");
  CHECK(line.find(",ok") != std::string::npos);
}

TEST_CASE("figures: trajectory family emits CSVs and one SVG") {
  const fs::path dir = temp_dir() / "fig1";
  REQUIRE(run("figures --fig 1 --outdir " + dir.string()) == 0);
  int csvs = 0;
  bool svg = false;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".csv") ++csvs;
    if (e.path().filename() == "fig1.svg") svg = true;
  }
  CHECK(csvs == 5);
  CHECK(svg);
  const std::string one = slurp(dir / "fig1_alpha0.25pi.csv");
  CHECK(count_lines(one) == 513);
}

TEST_CASE("verify --quick passes and exits cleanly") {
  CHECK(run("verify --quick") == 0);
  const std::string out = slurp(temp_dir() / "stdout.txt");
  CHECK(out.find("one-dim anchors") != std::string::npos);
  CHECK(out.find("FAIL") == std::string::npos);
}

TEST_CASE("oracle: grid result brackets the scalar anchor") {
  REQUIRE(run("oracle --speed 1 --alpha 0.01 --grid-n 60") == 0);
  const json j = json::parse(slurp(temp_dir() / "stdout.txt"));
  CHECK(std::abs(j["grid"]["t_f"].get<double>() - 2.0) < 0.05);
}
