#include "hemiguard/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "hemiguard/errors.hpp"

namespace hemiguard {

namespace {

void check_spec(const ScenarioSpec& spec) {
  if (!(spec.dt > 0.0)) throw GameError(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(spec.tol_breach >= 0.0) || !(spec.tol_capture >= 0.0)) {
    throw GameError(ErrorCode::InvalidArgument, "terminal tolerances must be >= 0");
  }
  if (!spec.defender.law || !spec.intruder.law) {
    throw GameError(ErrorCode::InvalidArgument, "strategy without a control law");
  }
}

NashRun summarize(const Trajectory& tr) {
  return NashRun{tr.defender_strategy, tr.intruder_strategy, tr.terminal.kind,
                 tr.terminal.t_f,      tr.payoff_trace.front(), tr.payoff_trace.back()};
}

}  // namespace

double default_timeout(const GameState& initial, const GameParams& params) {
  const double tau_a = solve_with_corner(initial, params).tau_a;
  // An intruder already on the perimeter still gets a nonzero horizon.
  return kTimeoutFactor * std::max(tau_a, 1e-3);
}

Trajectory run(const ScenarioSpec& spec) {
  check_spec(spec);
  const double timeout = spec.timeout > 0.0 ? spec.timeout : default_timeout(spec.initial, spec.params);
  const GameParams& params = spec.params;

  Trajectory tr{spec.defender.name, spec.intruder.name, {}, {}, {}, {}, {}, {}, {}, {}, {}, {},
                TerminalEvent{TerminalKind::Timeout, 0.0, spec.initial}};
  AgentStates s{DefenderState(0.0, spec.initial.phi_d()),
                IntruderState(spec.initial.psi(), spec.initial.r())};

  double t = 0.0;
  for (std::size_t k = 0;; ++k) {
    const GameState rel = relative_state(s);
    const auto event = check_terminal(rel, t, spec.tol_breach, spec.tol_capture);
    bool corner = false;
    const BreachSolution sol = solve_with_corner(rel, params, &corner);

    tr.times.push_back(t);
    tr.defender_states.push_back(s.defender);
    tr.intruder_states.push_back(s.intruder);
    tr.breach_azimuth.push_back(normalize_angle(s.defender.psi_d() + sol.theta_star));
    tr.tau_d_trace.push_back(sol.tau_d);
    tr.tau_a_trace.push_back(sol.tau_a);
    tr.payoff_trace.push_back(sol.p_star);

    if (event) {
      tr.terminal = *event;
      break;
    }
    if (t >= timeout - 1e-12) {
      tr.terminal = TerminalEvent{TerminalKind::Timeout, t, rel};
      break;
    }

    const double h = std::min(spec.dt, timeout - t);
    const StrategyContext ctx{s.defender, s.intruder, params, t, spec.seed, &sol, corner, h};
    const DefenderControl dc = admissible(spec.defender.law(ctx), s.defender.phi_d());
    const IntruderControl ic = spec.intruder.law(ctx);
    tr.defender_controls.push_back(dc);
    tr.intruder_controls.push_back(ic);
    tr.defender_rates.push_back(defender_rates(s.defender, dc));

    const StepResult step = integrate_step(s, dc, ic, params, h);
    s = step.states;
    if (step.breached) {
      t += step.dt_taken;
    } else if (h < spec.dt) {
      t = timeout;
    } else {
      t = static_cast<double>(k + 1) * spec.dt;
    }
  }

  const DefenderControl last_dc = tr.defender_controls.empty()
                                      ? DefenderControl{0.0, 1, 0.0, std::nullopt}
                                      : tr.defender_controls.back();
  const IntruderControl last_ic =
      tr.intruder_controls.empty() ? IntruderControl{0.0, 0.0} : tr.intruder_controls.back();
  tr.defender_controls.push_back(admissible(last_dc, s.defender.phi_d()));
  tr.intruder_controls.push_back(last_ic);
  tr.defender_rates.push_back(defender_rates(s.defender, tr.defender_controls.back()));
  return tr;
}

double max_step_increase(const Trajectory& tr) {
  double worst = 0.0;
  for (std::size_t i = 1; i < tr.payoff_trace.size(); ++i) {
    worst = std::max(worst, tr.payoff_trace[i] - tr.payoff_trace[i - 1]);
  }
  return worst;
}

double max_step_decrease(const Trajectory& tr) {
  double worst = 0.0;
  for (std::size_t i = 1; i < tr.payoff_trace.size(); ++i) {
    worst = std::max(worst, tr.payoff_trace[i - 1] - tr.payoff_trace[i]);
  }
  return worst;
}

bool non_increasing(const Trajectory& tr, double per_step_slack) {
  return max_step_increase(tr) <= per_step_slack;
}

bool non_decreasing(const Trajectory& tr, double per_step_slack) {
  return max_step_decrease(tr) <= per_step_slack;
}

double max_payoff_deviation(const Trajectory& tr) {
  double worst = 0.0;
  for (double p : tr.payoff_trace) worst = std::max(worst, std::abs(p - tr.payoff_trace.front()));
  return worst;
}

double max_breach_drift(const Trajectory& tr) {
  double worst = 0.0;
  for (double b : tr.breach_azimuth) {
    worst = std::max(worst, std::abs(normalize_angle(b - tr.breach_azimuth.front())));
  }
  return worst;
}

NashReport nash_check(const GameState& initial, const GameParams& params,
                      const std::vector<DefenderStrategy>& alt_defenders,
                      const std::vector<IntruderStrategy>& alt_intruders, double dt,
                      double timeout, std::uint64_t seed, double slack) {
  if (alt_defenders.empty() || alt_intruders.empty()) {
    throw GameError(ErrorCode::InvalidArgument, "nash_check needs alternatives on both sides");
  }
  // Slot 0 is the equilibrium, then intruder deviations, then defender ones.
  std::vector<ScenarioSpec> specs;
  specs.push_back({initial, params, optimal_defender(), optimal_intruder(), dt, timeout, seed});
  for (const auto& g : alt_intruders) {
    specs.push_back({initial, params, optimal_defender(), g, dt, timeout, seed});
  }
  for (const auto& o : alt_defenders) {
    specs.push_back({initial, params, o, optimal_intruder(), dt, timeout, seed});
  }

  std::vector<NashRun> runs(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  const auto count = static_cast<long long>(specs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      runs[k] = summarize(run(specs[k]));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!errors[k]) continue;
    try {
      std::rethrow_exception(errors[k]);
    } catch (const GameError& e) {
      throw GameError(e.code(), "run (" + specs[k].defender.name + ", " +
                                    specs[k].intruder.name + ") failed: " + e.what());
    }
  }

  NashReport report{runs[0], {}, {}, 0.0, 0.0, slack, false};
  const auto mid = runs.begin() + 1 + static_cast<std::ptrdiff_t>(alt_intruders.size());
  report.intruder_deviations.assign(runs.begin() + 1, mid);
  report.defender_deviations.assign(mid, runs.end());
  report.max_p_intruder_deviation = -INFINITY;
  for (const auto& r : report.intruder_deviations) {
    report.max_p_intruder_deviation = std::max(report.max_p_intruder_deviation, r.p_terminal);
  }
  report.min_p_defender_deviation = INFINITY;
  for (const auto& r : report.defender_deviations) {
    report.min_p_defender_deviation = std::min(report.min_p_defender_deviation, r.p_terminal);
  }
  const double p_eq = report.equilibrium.p_terminal;
  report.ordering_holds = report.max_p_intruder_deviation <= p_eq + slack &&
                          p_eq <= report.min_p_defender_deviation + slack;
  return report;
}

}  // namespace hemiguard
