#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "hemiguard/breach_solver.hpp"
#include "hemiguard/dynamics.hpp"
#include "hemiguard/geometry.hpp"

namespace hemiguard {

/// Everything a control law may look at. `breach` is the optimal breaching
/// solution at the current state when the caller already has it; `hold` is how
/// long the returned control will be held, 0 when unknown.
struct StrategyContext {
  const DefenderState& defender;
  const IntruderState& intruder;
  const GameParams& params;
  double t;
  std::uint64_t seed;
  const BreachSolution* breach = nullptr;
  bool corner = false;
  double hold = 0.0;
};

/// Strategies are stateless: the same context always yields the same control.
struct DefenderStrategy {
  std::string name;
  std::function<DefenderControl(const StrategyContext&)> law;
};

struct IntruderStrategy {
  std::string name;
  std::function<IntruderControl(const StrategyContext&)> law;
};

/// Random strategies hold each draw for this long.
inline constexpr double kRandomHold = 0.1;

DefenderStrategy optimal_defender();
/// Zero speed.
DefenderStrategy stationary_defender();
/// omega_d uniform on [-1, 1] and a fair azimuth sign, redrawn every
/// kRandomHold from (seed, stream, slot).
DefenderStrategy random_defender(std::uint64_t stream);

IntruderStrategy optimal_intruder();
IntruderStrategy stationary_intruder();
/// Constant heading relative to the inward radial, full speed.
IntruderStrategy fixed_heading_intruder(double gamma_a);
/// gamma_a uniform on (-pi, pi] and speed fraction uniform on [0, 1].
IntruderStrategy random_intruder(std::uint64_t stream);

/// "optimal", "stationary", "random:<stream>"; throws InvalidArgument otherwise.
DefenderStrategy defender_strategy_from_name(std::string_view name);
/// "optimal", "stationary", "fixed:<gamma>", "random:<stream>".
IntruderStrategy intruder_strategy_from_name(std::string_view name);

/// Uniform double on [0, 1) from a counter-based draw; exposed for tests.
double uniform_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t slot,
                    std::uint64_t index);

}  // namespace hemiguard
