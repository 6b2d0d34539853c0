#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hemiguard/dynamics.hpp"
#include "hemiguard/geometry.hpp"
#include "hemiguard/strategies.hpp"

namespace hemiguard {

inline constexpr double kDefaultDt = 1e-3;
inline constexpr double kTimeoutFactor = 4.0;
inline constexpr double kNashSlack = 1e-3;
inline constexpr double kStepSlack = 1e-6;

/// The defender starts at azimuth 0, the intruder at azimuth initial.psi().
struct ScenarioSpec {
  GameState initial;
  GameParams params;
  DefenderStrategy defender;
  IntruderStrategy intruder;
  double dt = kDefaultDt;
  double timeout = 0.0;  ///< <= 0 selects kTimeoutFactor * initial tau_A
  std::uint64_t seed = 0;
  double tol_breach = kDefaultTolBreach;
  double tol_capture = kDefaultTolCapture;
};

/// Per-sample traces; every vector has one entry per recorded time. The
/// controls at index i are the ones held over [t_i, t_{i+1}]; the last entry
/// repeats the previous one. Payoff quantities are re-solved at each sample.
struct Trajectory {
  std::string defender_strategy;
  std::string intruder_strategy;
  std::vector<double> times;
  std::vector<DefenderState> defender_states;
  std::vector<IntruderState> intruder_states;
  std::vector<DefenderControl> defender_controls;
  std::vector<IntruderControl> intruder_controls;
  std::vector<std::array<double, 2>> defender_rates;  ///< (phi_dot, psi_dot)
  std::vector<double> breach_azimuth;                 ///< absolute, optimal
  std::vector<double> tau_d_trace;
  std::vector<double> tau_a_trace;
  std::vector<double> payoff_trace;
  TerminalEvent terminal;

  std::size_t size() const noexcept { return times.size(); }
};

double default_timeout(const GameState& initial, const GameParams& params);

Trajectory run(const ScenarioSpec& spec);

/// Largest single-step rise and fall of the payoff trace (0 when none).
double max_step_increase(const Trajectory& tr);
double max_step_decrease(const Trajectory& tr);
bool non_increasing(const Trajectory& tr, double per_step_slack = kStepSlack);
bool non_decreasing(const Trajectory& tr, double per_step_slack = kStepSlack);
/// max_i |p_i - p_0|.
double max_payoff_deviation(const Trajectory& tr);
/// max_i |breach_azimuth_i - breach_azimuth_0|, wrapped.
double max_breach_drift(const Trajectory& tr);

struct NashRun {
  std::string defender;
  std::string intruder;
  TerminalKind outcome = TerminalKind::Timeout;
  double t_f = 0.0;
  double p_initial = 0.0;
  double p_terminal = 0.0;
};

struct NashReport {
  NashRun equilibrium;
  std::vector<NashRun> intruder_deviations;  ///< (optimal defender, alternative intruder)
  std::vector<NashRun> defender_deviations;  ///< (alternative defender, optimal intruder)
  double max_p_intruder_deviation;           ///< max over Gamma of p(Omega*, Gamma)
  double min_p_defender_deviation;           ///< min over Omega of p(Omega, Gamma*)
  double slack;
  bool ordering_holds;
};

/// Runs the equilibrium pair and every unilateral deviation, in parallel,
/// and checks p(O*, G) <= p(O*, G*) + slack <= p(O, G*) + 2 slack on the
/// terminal payoffs. Deviation lists keep the input order.
NashReport nash_check(const GameState& initial, const GameParams& params,
                      const std::vector<DefenderStrategy>& alt_defenders,
                      const std::vector<IntruderStrategy>& alt_intruders, double dt,
                      double timeout, std::uint64_t seed, double slack = kNashSlack);

}  // namespace hemiguard
