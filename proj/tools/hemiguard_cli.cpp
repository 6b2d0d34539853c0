// Command-line front end. Exit codes: 0 success (Timeout included), 1 usage
// or invalid input, 2 solver or integration failure.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hemiguard/barrier.hpp"
#include "hemiguard/breach_solver.hpp"
#include "hemiguard/errors.hpp"
#include "hemiguard/io.hpp"
#include "hemiguard/kernels.hpp"
#include "hemiguard/simulation.hpp"
#include "hemiguard/strategies.hpp"

namespace hg = hemiguard;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;

struct Common {
  double psi = 0.0;
  double phi_d = 0.0;
  double r = 0.0;
  double nu = 0.0;
  bool degrees = false;
  std::string format = "json";

  double angle(double v) const { return degrees ? v * hg::kPi / 180.0 : v; }
};

void add_state_flags(CLI::App* cmd, Common& c, bool with_psi_r) {
  if (with_psi_r) {
    cmd->add_option("--psi", c.psi, "relative azimuth of the intruder")->required();
    cmd->add_option("--r", c.r, "intruder radius, perimeter radii")->required();
  }
  cmd->add_option("--phi-d", c.phi_d, "defender elevation")->required();
  cmd->add_option("--nu", c.nu, "intruder speed ratio")->required();
  cmd->add_flag("--degrees", c.degrees, "angles given in degrees");
}

void add_format(CLI::App* cmd, std::string& format, const std::string& dflt) {
  format = dflt;
  cmd->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

void emit(const std::optional<std::string>& out, const std::string& text) {
  if (out) {
    hg::io::write_atomic(*out, text);
  } else {
    std::cout << text;
  }
}

std::string json_line(const nlohmann::ordered_json& j) { return j.dump() + "\n"; }

int fail(int code, std::string_view kind, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = std::string(kind);
  j["message"] = message;
  std::cout << json_line(j);
  return code;
}

int jobs_from_env() {
  if (const char* v = std::getenv("HEMIGUARD_JOBS")) {
    const int n = std::atoi(v);
    if (n > 0) return n;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perimeter-defense game on a hemisphere: solver, barrier and simulator."};
  app.require_subcommand(1);

  // solve
  Common solve_c;
  double solve_tol = hg::kDefaultSolveTol;
  auto* solve_cmd = app.add_subcommand("solve", "optimal breaching point and payoff");
  add_state_flags(solve_cmd, solve_c, true);
  add_format(solve_cmd, solve_c.format, "json");
  solve_cmd->add_option("--tol", solve_tol, "root-finding tolerance, radians");

  // barrier
  Common bar_c;
  std::size_t bar_samples = 256;
  double bar_level = 0.0;
  std::optional<std::string> bar_out;
  auto* bar_cmd = app.add_subcommand("barrier", "barrier or level-set samples as CSV");
  add_state_flags(bar_cmd, bar_c, false);
  bar_cmd->add_option("--samples", bar_samples, "number of theta samples (>= 16)")
      ->capture_default_str();
  bar_cmd->add_option("--level", bar_level, "payoff level k (0 is the barrier)");
  bar_cmd->add_option("--out", bar_out, "output file (default stdout)");

  // classify
  Common cls_c;
  std::optional<double> cls_psi, cls_r;
  std::optional<std::size_t> cls_grid;
  double cls_r_max = 4.0;
  double cls_band = hg::kDefaultRegionBand;
  std::optional<std::string> cls_out;
  auto* cls_cmd = app.add_subcommand("classify", "winning region of a point or a polar raster");
  add_state_flags(cls_cmd, cls_c, false);
  add_format(cls_cmd, cls_c.format, "json");
  auto* psi_opt = cls_cmd->add_option("--psi", cls_psi, "point mode: relative azimuth");
  auto* r_opt = cls_cmd->add_option("--r", cls_r, "point mode: intruder radius");
  auto* grid_opt = cls_cmd->add_option("--grid", cls_grid, "grid mode: cells per axis");
  cls_cmd->add_option("--r-max", cls_r_max, "grid mode: outer radius")->capture_default_str();
  cls_cmd->add_option("--band", cls_band, "payoff band labelled OnBarrier")->capture_default_str();
  cls_cmd->add_option("--out", cls_out, "grid mode output file (default stdout)");
  psi_opt->needs(r_opt);
  r_opt->needs(psi_opt);
  grid_opt->excludes(psi_opt)->excludes(r_opt);

  // simulate
  Common sim_c;
  std::string sim_scenario;
  std::optional<std::string> sim_def, sim_int, sim_out;
  double sim_dt = hg::kDefaultDt;
  double sim_timeout = 0.0;
  std::uint64_t sim_seed = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "integrate one game");
  add_state_flags(sim_cmd, sim_c, true);
  sim_cmd->add_option("--scenario", sim_scenario, "both-optimal, defender-optimal or intruder-optimal")
      ->check(CLI::IsMember({"both-optimal", "defender-optimal", "intruder-optimal"}));
  sim_cmd->add_option("--defender", sim_def, "optimal, stationary or random:<stream>");
  sim_cmd->add_option("--intruder", sim_int,
                      "optimal, stationary, fixed:<gamma> or random:<stream>");
  sim_cmd->add_option("--dt", sim_dt, "step")->capture_default_str();
  sim_cmd->add_option("--timeout", sim_timeout, "horizon (default 4 x initial tau_A)");
  sim_cmd->add_option("--seed", sim_seed, "seed for random strategies")->capture_default_str();
  sim_cmd->add_option("--out", sim_out, "trace CSV file");

  // nash-check
  Common nash_c;
  std::size_t nash_alts = 20;
  double nash_dt = hg::kDefaultDt;
  double nash_timeout = 0.0;
  double nash_slack = hg::kNashSlack;
  std::uint64_t nash_seed = 0;
  std::optional<std::string> nash_out;
  auto* nash_cmd = app.add_subcommand("nash-check", "equilibrium against random deviations");
  add_state_flags(nash_cmd, nash_c, true);
  nash_cmd->add_option("--alternatives", nash_alts, "random deviations per side")
      ->capture_default_str();
  nash_cmd->add_option("--dt", nash_dt, "step")->capture_default_str();
  nash_cmd->add_option("--timeout", nash_timeout, "horizon (default 4 x initial tau_A)");
  nash_cmd->add_option("--slack", nash_slack, "ordering slack")->capture_default_str();
  nash_cmd->add_option("--seed", nash_seed, "seed")->capture_default_str();
  nash_cmd->add_option("--out", nash_out, "report JSON file (default stdout)");

  // sweep
  std::vector<double> sw_phi, sw_nu, sw_level;
  std::size_t sw_samples = 256;
  std::string sw_dir;
  int sw_jobs = jobs_from_env();
  bool sw_degrees = false;
  auto* sw_cmd = app.add_subcommand("sweep", "barrier datasets over parameter lists");
  sw_cmd->add_option("--phi-d", sw_phi, "defender elevations")->required()->delimiter(',');
  sw_cmd->add_option("--nu", sw_nu, "speed ratios")->required()->delimiter(',');
  sw_cmd->add_option("--level", sw_level, "payoff levels (default 0)")->delimiter(',');
  sw_cmd->add_option("--samples", sw_samples, "theta samples per curve")->capture_default_str();
  sw_cmd->add_option("--out-dir", sw_dir, "output directory")->required();
  sw_cmd->add_option("--jobs", sw_jobs, "parallel workers (default $HEMIGUARD_JOBS or 1)")
      ->check(CLI::PositiveNumber);
  sw_cmd->add_flag("--degrees", sw_degrees, "angles given in degrees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve_cmd) {
      const hg::GameState s(solve_c.angle(solve_c.psi), solve_c.angle(solve_c.phi_d), solve_c.r);
      const hg::BreachSolution sol = hg::solve(s, hg::GameParams(solve_c.nu), solve_tol);
      const hg::RegionLabel label = hg::label_for_payoff(sol.p_star);
      std::cout << (solve_c.format == "csv" ? hg::io::solution_csv(sol, label)
                                            : json_line(hg::io::solution_json(sol, label)));
      return 0;
    }

    if (*bar_cmd) {
      const hg::BarrierCurve curve =
          hg::level_set(bar_c.angle(bar_c.phi_d), bar_c.nu, bar_level, bar_samples);
      emit(bar_out, hg::io::barrier_csv(curve));
      return 0;
    }

    if (*cls_cmd) {
      const hg::GameParams params(cls_c.nu);
      const double phi = cls_c.angle(cls_c.phi_d);
      if (cls_psi) {
        const hg::GameState s(cls_c.angle(*cls_psi), phi, *cls_r);
        const double p = hg::solve(s, params).p_star;
        const hg::RegionLabel label = hg::label_for_payoff(p, cls_band);
        if (cls_c.format == "csv") {
          std::cout << "label,p_star\n" << hg::to_string(label) << ',' << hg::io::format_number(p) << '\n';
        } else {
          nlohmann::ordered_json j;
          j["label"] = std::string(hg::to_string(label));
          j["p_star"] = hg::io::round9(p);
          std::cout << json_line(j);
        }
        return 0;
      }
      if (!cls_grid) return fail(kExitUsage, "InvalidArgument", "classify needs --psi/--r or --grid");
      const std::size_t n = *cls_grid;
      if (n < 2 || !(cls_r_max > 1.0)) {
        return fail(kExitUsage, "InvalidArgument", "--grid must be >= 2 and --r-max > 1");
      }
      std::vector<double> psis(n), radii(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        psis[i] = -hg::kPi + 2.0 * hg::kPi * u;
        radii[i] = 1.0 + (cls_r_max - 1.0) * u;
      }
      emit(cls_out, hg::io::raster_csv(
                        hg::kernels::parallel::region_raster(phi, params, psis, radii, cls_band)));
      return 0;
    }

    if (*sim_cmd) {
      std::string def_name = sim_def.value_or("optimal");
      std::string int_name = sim_int.value_or("optimal");
      if (sim_scenario == "both-optimal") {
        def_name = int_name = "optimal";
      } else if (sim_scenario == "defender-optimal") {
        def_name = "optimal";
        int_name = sim_int.value_or("fixed:0.3");
      } else if (sim_scenario == "intruder-optimal") {
        def_name = sim_def.value_or("stationary");
        int_name = "optimal";
      }
      const hg::ScenarioSpec spec{
          hg::GameState(sim_c.angle(sim_c.psi), sim_c.angle(sim_c.phi_d), sim_c.r),
          hg::GameParams(sim_c.nu),
          hg::defender_strategy_from_name(def_name),
          hg::intruder_strategy_from_name(int_name),
          sim_dt,
          sim_timeout,
          sim_seed};
      const hg::Trajectory tr = hg::run(spec);
      if (sim_out) hg::io::write_atomic(*sim_out, hg::io::trajectory_csv(tr));
      std::cout << json_line(hg::io::trajectory_summary_json(tr));
      return 0;
    }

    if (*nash_cmd) {
      std::vector<hg::DefenderStrategy> defs;
      std::vector<hg::IntruderStrategy> ints;
      for (std::size_t k = 0; k < nash_alts; ++k) {
        defs.push_back(hg::random_defender(k));
        ints.push_back(hg::random_intruder(k));
      }
      const hg::NashReport report = hg::nash_check(
          hg::GameState(nash_c.angle(nash_c.psi), nash_c.angle(nash_c.phi_d), nash_c.r),
          hg::GameParams(nash_c.nu), defs, ints, nash_dt, nash_timeout, nash_seed, nash_slack);
      emit(nash_out, json_line(hg::io::nash_report_json(report)));
      return 0;
    }

    if (*sw_cmd) {
      if (sw_level.empty()) sw_level.push_back(0.0);
      struct Combo {
        double phi, nu, level;
      };
      std::vector<Combo> combos;
      for (double p : sw_phi) {
        for (double v : sw_nu) {
          for (double k : sw_level) combos.push_back({sw_degrees ? p * hg::kPi / 180.0 : p, v, k});
        }
      }
      std::filesystem::create_directories(sw_dir);
      std::vector<std::exception_ptr> errors(combos.size());
      const auto count = static_cast<long long>(combos.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(sw_jobs)
      for (long long i = 0; i < count; ++i) {
        const Combo& c = combos[static_cast<std::size_t>(i)];
        try {
          const auto curve = hg::level_set(c.phi, c.nu, c.level, sw_samples);
          const std::optional<double> tag = c.level == 0.0 ? std::nullopt : std::optional(c.level);
          hg::io::write_atomic(std::filesystem::path(sw_dir) / hg::io::sweep_filename(c.phi, c.nu, tag),
                               hg::io::barrier_csv(curve));
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
      for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
      return 0;
    }
  } catch (const hg::GameError& e) {
    const int code = e.code() == hg::ErrorCode::InvalidArgument ? kExitUsage : kExitDomain;
    return fail(code, hg::to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(kExitDomain, "RuntimeError", e.what());
  }
  return kExitUsage;
}
