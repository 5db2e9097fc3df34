// Command line front end: solve single return problems, sweep parameter
// families, export figure data (CSV + SVG), run the verification panels and
// query the brute-force oracles.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv.hpp"
#include "svg.hpp"
#include "tor/normalize.hpp"
#include "tor/oracle.hpp"
#include "tor/solver.hpp"
#include "tor/trajectory.hpp"
#include "tor/verify.hpp"

namespace {

using json = nlohmann::json;
using namespace tor;

constexpr double kPi = std::numbers::pi;

// Angles are accepted as raw radians or as multiples of pi with a literal
// "pi" suffix ("0.25pi", "pi").
double parse_angle(const std::string& text) {
  std::string s = text;
  double factor = 1.0;
  if (s.size() >= 2) {
    std::string tail = s.substr(s.size() - 2);
    std::transform(tail.begin(), tail.end(), tail.begin(), ::tolower);
    if (tail == "pi") {
      factor = kPi;
      s = s.substr(0, s.size() - 2);
      if (s.empty() || s == "+" || s == "-") s += "1";
    }
  }
  size_t used = 0;
  const double value = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad angle: " + text);
  return value * factor;
}

unsigned worker_cap() {
  unsigned cap = std::thread::hardware_concurrency();
  if (cap == 0) cap = 1;
  if (const char* env = std::getenv("TOR_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) cap = static_cast<unsigned>(v);
  }
  return cap;
}

json solution_to_json(const Solution& sol, bool reflected) {
  json j;
  j["problem"] = {{"speed", sol.problem.speed},
                  {"alpha", sol.problem.alpha},
                  {"reflected", reflected}};
  j["t_f"] = sol.t_f();
  const auto [phi, psi] = control_angles(sol);
  j["phi"] = phi;
  j["psi"] = psi;
  if (const AdjointSolution* a = sol.adjoint()) {
    j["branch"] = "steering";
    j["mu"] = a->mu;
    j["sigma"] = a->sigma;
    j["zeta"] = {a->zeta.x, a->zeta.y};
    j["eta"] = {a->eta.x, a->eta.y};
    j["newton_iters"] = a->newton_iters;
    const auto [r1, r2] = residuals(a->mu, a->sigma, sol.problem);
    const auto [xe, ve] = [&] {
      const auto [x, v] = state_at(sol, a->t_f);
      return std::make_pair(norm(x), norm(v - CanonicalProblem::terminal_velocity()));
    }();
    j["residuals"] = {{"r1", r1},
                      {"r2", r2},
                      {"norm", a->residual_norm},
                      {"terminal_position", xe},
                      {"terminal_velocity", ve}};
  } else {
    const OneDimSolution* od = sol.one_dim();
    j["branch"] = "one-dim";
    j["one_dim"] = {{"lambda", od->lambda},
                    {"eta_sign", od->eta_sign},
                    {"switch_fraction", od->switch_fraction},
                    {"degenerate", od->degenerate},
                    {"v0", sol.one_dim_v0()}};
  }
  return j;
}

void write_trajectory_csv(const std::string& path, const Solution& sol, int samples) {
  torcli::CsvWriter csv(path);
  csv.header({"t", "x", "y", "vx", "vy", "ux", "uy", "speed"});
  const TrajectoryReport rep = sample_trajectory(sol, samples);
  for (const TrajectorySample& s : rep.samples) {
    csv.field(s.t);
    csv.field(s.x.x);
    csv.field(s.x.y);
    csv.field(s.v.x);
    csv.field(s.v.y);
    csv.field(s.u.x);
    csv.field(s.u.y);
    csv.field(s.speed);
    csv.end_row();
  }
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
  double speed, alpha;
  bool ok = false;
  bool one_dim = false;
  double mu = 0, sigma = 0, t_f = 0, phi = 0, psi = 0, residual = 0;
  int iters = 0;
};

// One speed's alpha family, continuation-seeded in grid order. Endpoints
// (and anything collinear) dispatch to the scalar branch, reported with the
// limit parameters mu = lambda, sigma = 1.
std::vector<SweepRow> sweep_one_speed(double speed, const std::vector<double>& alphas) {
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  std::optional<std::pair<double, double>> hint;
  for (double a : alphas) {
    SweepRow row{speed, a};
    try {
      const Solution s = solve(CanonicalProblem{speed, a}, {}, hint);
      row.ok = true;
      row.t_f = s.t_f();
      std::tie(row.phi, row.psi) = control_angles(s);
      if (const AdjointSolution* adj = s.adjoint()) {
        row.mu = adj->mu;
        row.sigma = adj->sigma;
        row.iters = adj->newton_iters;
        row.residual = adj->residual_norm;
        hint = std::make_pair(adj->mu, adj->sigma);
      } else {
        row.one_dim = true;
        row.mu = s.one_dim()->lambda;
        row.sigma = 1.0;
      }
    } catch (const NoConvergence&) {
      row.ok = false;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> run_sweep(std::vector<double> speeds, int alpha_grid,
                                double alpha_max = kPi) {
  std::sort(speeds.begin(), speeds.end());
  std::vector<double> alphas(alpha_grid);
  for (int i = 0; i < alpha_grid; ++i) {
    alphas[i] = alpha_max * static_cast<double>(i) / (alpha_grid - 1);
  }

  std::vector<std::vector<SweepRow>> per_speed(speeds.size());
  const unsigned cap = std::min<unsigned>(worker_cap(), speeds.size());
  std::vector<std::thread> pool;
  std::mutex next_mutex;
  size_t next = 0;
  for (unsigned w = 0; w < cap; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t idx;
        {
          std::lock_guard<std::mutex> lock(next_mutex);
          if (next >= speeds.size()) return;
          idx = next++;
        }
        per_speed[idx] = sweep_one_speed(speeds[idx], alphas);
      }
    });
  }
  for (auto& t : pool) t.join();

  std::vector<SweepRow> rows;
  for (auto& group : per_speed) {
    rows.insert(rows.end(), group.begin(), group.end());
  }
  return rows;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  torcli::CsvWriter csv(path);
  csv.header({"speed", "alpha", "mu", "sigma", "t_f", "phi", "psi", "iters", "residual",
              "status"});
  for (const SweepRow& r : rows) {
    csv.field(r.speed);
    csv.field(r.alpha);
    if (r.ok) {
      csv.field(r.mu);
      csv.field(r.sigma);
      csv.field(r.t_f);
      csv.field(r.phi);
      csv.field(r.psi);
      csv.field(r.iters);
      csv.field(r.residual);
      csv.field(std::string("ok"));
    } else {
      for (int i = 0; i < 7; ++i) csv.empty();
      csv.field(std::string("failed"));
    }
    csv.end_row();
  }
}

// ---------------------------------------------------------------------------
// figures

std::string format_tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

int cmd_figures(int fig, const std::string& outdir) {
  namespace fs = std::filesystem;
  fs::create_directories(outdir);
  auto path = [&](const std::string& name) { return (fs::path(outdir) / name).string(); };

  if (fig == 1 || fig == 2) {
    // Families of optimal trajectories.
    const bool by_alpha = fig == 1;
    const std::vector<double> params = by_alpha
                                           ? std::vector<double>{0.1, 0.25, 0.5, 0.75, 0.9}
                                           : std::vector<double>{0.3, 0.7, 1.0, 1.3};
    std::vector<torcli::Curve> curves;
    for (double v : params) {
      const double speed = by_alpha ? 3.0 : v;
      const double alpha = by_alpha ? v * kPi : 0.75 * kPi;
      const Solution s = solve(CanonicalProblem{speed, alpha});
      const std::string tag = by_alpha ? "alpha" + format_tag(v) + "pi" : "speed" + format_tag(v);
      write_trajectory_csv(path("fig" + std::to_string(fig) + "_" + tag + ".csv"), s, 512);
      torcli::Curve c;
      c.label = by_alpha ? "alpha = " + format_tag(v) + " pi" : "|v0| = " + format_tag(v);
      for (const TrajectorySample& smp : sample_trajectory(s, 512).samples) {
        c.x.push_back(smp.x.x);
        c.y.push_back(smp.x.y);
      }
      curves.push_back(std::move(c));
    }
    const std::string title = by_alpha ? "Optimal trajectories, |v0| = 3"
                                       : "Optimal trajectories, alpha = 0.75 pi";
    torcli::write_svg(path("fig" + std::to_string(fig) + ".svg"), title, "x", "y", curves,
                      true);
    return 0;
  }

  // Curve families over alpha.
  struct FigSpec {
    std::vector<double> speeds;
    double alpha_max;
    const char* column;
    const char* title;
  };
  FigSpec spec;
  switch (fig) {
    case 3:
      spec = {{0.5, 0.7, 0.9, 1.0, 3.0}, kPi, "phi", "Initial control direction phi(alpha)"};
      break;
    case 4:
      spec = {{0.3, 0.7, 0.9, 1.0, 1.3, 3.0}, kPi, "psi",
              "Terminal control direction psi(alpha)"};
      break;
    case 5:
      spec = {{0.0, 0.1, 0.5, 1.0, 1.1, 1.2, 1.3}, kPi, "t_f", "Optimal time t_f(alpha)"};
      break;
    case 6:
      spec = {{0.0, 0.1, 0.3, 0.5, 0.7, 1.0}, 0.5 * kPi, "t_f",
              "Optimal time t_f(alpha), alpha up to pi/2"};
      break;
    default:
      std::fprintf(stderr, "figure id must be 1..6\n");
      return 1;
  }

  bool any_failed = false;
  std::vector<torcli::Curve> curves;
  for (double speed : spec.speeds) {
    const auto rows = sweep_one_speed(
        speed,
        [&] {
          std::vector<double> alphas(64);
          for (int i = 0; i < 64; ++i) alphas[i] = spec.alpha_max * i / 63.0;
          return alphas;
        }());
    torcli::CsvWriter csv(
        path("fig" + std::to_string(fig) + "_speed" + format_tag(speed) + ".csv"));
    csv.header({"alpha", spec.column});
    torcli::Curve c;
    c.label = "|v0| = " + format_tag(speed);
    for (const SweepRow& r : rows) {
      if (!r.ok) {
        any_failed = true;
        continue;
      }
      const double value = spec.column == std::string("phi")
                               ? r.phi
                               : (spec.column == std::string("psi") ? r.psi : r.t_f);
      csv.field(r.alpha);
      csv.field(value);
      csv.end_row();
      c.x.push_back(r.alpha);
      c.y.push_back(value);
    }
    curves.push_back(std::move(c));
  }
  torcli::write_svg(path("fig" + std::to_string(fig) + ".svg"), spec.title, "alpha",
                    spec.column, curves);
  return any_failed ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-optimal return of a force-bounded point mass to the origin"};
  app.require_subcommand(1);

  // --- solve ---------------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "Solve one canonical problem");
  double speed = 0.0;
  std::string alpha_text = "0";
  std::string json_path = "solution.json";
  std::string traj_path;
  int samples = 256;
  solve_cmd->add_option("--speed", speed, "Initial speed |v0| >= 0")->required();
  solve_cmd->add_option("--alpha", alpha_text,
                        "Angle between v0 and the +x axis (radians or '0.25pi')");
  solve_cmd->add_option("--json", json_path, "Solution output path");
  solve_cmd->add_option("--traj", traj_path, "Optional trajectory CSV path");
  solve_cmd->add_option("--samples", samples, "Trajectory sample count")
      ->check(CLI::Range(2, 1000000));

  // --- sweep ---------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep t_f and control angles over alpha");
  std::vector<double> sweep_speeds;
  int alpha_grid = 64;
  std::string sweep_out = "sweep.csv";
  sweep_cmd->add_option("--speeds", sweep_speeds, "Speeds to sweep")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--alpha-grid", alpha_grid, "Uniform grid points on [0, pi]")
      ->check(CLI::Range(2, 100000));
  sweep_cmd->add_option("--out", sweep_out, "Output CSV path");

  // --- figures -------------------------------------------------------------
  auto* fig_cmd = app.add_subcommand("figures", "Reproduce a figure's data (CSV + SVG)");
  int fig_id = 1;
  std::string outdir = "figures";
  fig_cmd->add_option("--fig", fig_id, "Figure id (1..6)")->required()->check(CLI::Range(1, 6));
  fig_cmd->add_option("--outdir", outdir, "Output directory");

  // --- verify --------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "Run the verification panels");
  bool with_oracle = false, quick = false;
  verify_cmd->add_flag("--oracle", with_oracle, "Include brute-force oracle comparisons");
  verify_cmd->add_flag("--quick", quick, "Fast anchor/invariant subset only");

  // --- oracle --------------------------------------------------------------
  auto* oracle_cmd = app.add_subcommand("oracle", "Run the brute-force reference solvers");
  double o_speed = 0.0;
  std::string o_alpha = "0";
  int grid_n = 120;
  double mu_max = 50.0;
  bool direct = false;
  int segments = 128;
  double o_tol = 1e-4;
  oracle_cmd->add_option("--speed", o_speed)->required();
  oracle_cmd->add_option("--alpha", o_alpha);
  oracle_cmd->add_option("--grid-n", grid_n, "Grid points per axis")->check(CLI::Range(2, 5000));
  oracle_cmd->add_option("--mu-max", mu_max);
  oracle_cmd->add_flag("--direct", direct, "Also run the transcription oracle");
  oracle_cmd->add_option("--segments", segments)->check(CLI::Range(32, 4096));
  oracle_cmd->add_option("--tol", o_tol, "Transcription feasibility tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve_cmd) {
      const auto [problem, reflected] = make_canonical(speed, parse_angle(alpha_text));
      Solution sol = [&] {
        try {
          return solve(problem);
        } catch (const NoConvergence& e) {
          std::fprintf(stderr, "no convergence: %s (best residual %.3e)\n", e.what(),
                       e.best_residual());
          std::exit(2);
        }
      }();
      std::ofstream(json_path) << solution_to_json(sol, reflected).dump(2) << '\n';
      if (!traj_path.empty()) write_trajectory_csv(traj_path, sol, samples);
      std::printf("t_f = %.12f (%s)\n", sol.t_f(), sol.is_one_dim() ? "one-dim" : "steering");
      return 0;
    }

    if (*sweep_cmd) {
      const auto rows = run_sweep(sweep_speeds, alpha_grid);
      write_sweep_csv(sweep_out, rows);
      const size_t failed =
          std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.ok; });
      std::printf("%zu rows -> %s (%zu failed)\n", rows.size(), sweep_out.c_str(), failed);
      return failed ? 3 : 0;
    }

    if (*fig_cmd) {
      return cmd_figures(fig_id, outdir);
    }

    if (*verify_cmd) {
      const auto results =
          tor::verify::run_acceptance({.include_oracle = with_oracle, .quick = quick});
      bool all = true;
      for (const auto& r : results) {
        std::printf("[%s] %-40s %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str(), r.seconds);
        all = all && r.pass;
      }
      return all ? 0 : 4;
    }

    if (*oracle_cmd) {
      const auto [problem, reflected] = make_canonical(o_speed, parse_angle(o_alpha));
      (void)reflected;
      json j;
      const auto g = oracle::grid_oracle(problem, grid_n, grid_n, mu_max);
      j["grid"] = {{"mu", g.mu},
                   {"sigma", g.sigma},
                   {"t_f", g.t_f},
                   {"residual_norm", g.residual_norm},
                   {"resolution", g.resolution},
                   {"t_f_resolution", g.t_f_resolution}};
      if (direct) {
        const auto d = oracle::direct_oracle(problem, segments, o_tol);
        j["direct"] = {{"t_f", d.t_f}, {"violation", d.violation}, {"segments", d.segments}};
      }
      std::printf("%s\n", j.dump(2).c_str());
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid arguments: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
