#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "hemiguard/breach_solver.hpp"
#include "hemiguard/geometry.hpp"

namespace hemiguard {

inline constexpr double kDefaultTolBreach = 1e-6;
inline constexpr double kDefaultTolCapture = 1e-3;
/// cos(phi_d) below which the defender counts as being at the pole.
inline constexpr double kPoleCos = 1e-12;

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

/// Defender speed is speed_fraction (1 for every strategy except the
/// stationary one); omega_d is the elevation rate and the rest of the speed
/// goes into azimuth in the direction azimuth_sign.
struct DefenderControl {
  double omega_d = 0.0;
  int azimuth_sign = 1;
  double speed_fraction = 1.0;
  /// Azimuth of the meridian to descend along when starting at the pole.
  std::optional<double> pole_meridian;
};

/// gamma_a is the heading measured from the inward radial direction,
/// positive toward increasing azimuth.
struct IntruderControl {
  double gamma_a = 0.0;
  double speed_fraction = 1.0;
};

enum class TerminalKind { DefenderWin, IntruderWin, Timeout };

std::string_view to_string(TerminalKind kind) noexcept;

struct TerminalEvent {
  TerminalKind kind;
  double t_f;
  GameState final_state;
};

struct AgentStates {
  DefenderState defender;
  IntruderState intruder;
};

GameState relative_state(const AgentStates& s);

struct StateRate {
  double psi_dot;
  double phi_dot;
  double r_dot;
};

/// Rate of change of the relative state. Throws PoleSingularity at the pole
/// unless the whole defender speed is vertical.
StateRate state_derivative(const GameState& state, const DefenderControl& dc,
                           const IntruderControl& ic, const GameParams& params);

Vec3 defender_position(const DefenderState& d) noexcept;
Vec2 intruder_position(const IntruderState& a) noexcept;

/// dc clipped to |omega_d| <= speed_fraction, with descent removed on the
/// equator.
DefenderControl admissible(const DefenderControl& dc, double phi_d) noexcept;

/// Cartesian defender velocity at unit vector d. fallback_azimuth orients the
/// local frame when d is the pole and dc has no pole_meridian.
Vec3 defender_velocity(const Vec3& d, const DefenderControl& dc, double fallback_azimuth);

Vec2 intruder_velocity(const Vec2& a, const IntruderControl& ic, const GameParams& params);

/// (phi_dot, psi_dot) implied by dc at the defender's position; psi_dot is 0
/// at the pole.
std::array<double, 2> defender_rates(const DefenderState& d, const DefenderControl& dc);

struct StepResult {
  AgentStates states;
  double dt_taken;  ///< < dt when the step was cut at the perimeter crossing
  bool breached;    ///< intruder reached r = 1 inside the step
};

/// One classical RK4 step with controls held, on Cartesian positions. The
/// defender is projected back onto the upper unit hemisphere. If the
/// intruder ends inside the perimeter, both agents are linearly interpolated
/// back to the r = 1 crossing.
StepResult integrate_step(const AgentStates& s, const DefenderControl& dc,
                          const IntruderControl& ic, const GameParams& params, double dt);

/// Throws AmbiguousTerminal when breach and capture hold at once.
std::optional<TerminalEvent> check_terminal(const GameState& state, double t = 0.0,
                                            double tol_breach = kDefaultTolBreach,
                                            double tol_capture = kDefaultTolCapture);

/// Head along the great circle toward the optimal breaching point. sol must be
/// solve_with_corner() of relative_state(defender, intruder); corner selects
/// the vertical kick. With hold > 0 the heading is held for that long, and
/// near a tie between two local maxima it balances both over the hold.
DefenderControl optimal_defender_control(const DefenderState& defender, const GameState& rel,
                                         const GameParams& params, const BreachSolution& sol,
                                         bool corner, double hold = 0.0);
DefenderControl optimal_defender_control(const DefenderState& defender,
                                         const IntruderState& intruder, const GameParams& params);

/// Straight at the optimal breaching point, full speed.
IntruderControl optimal_intruder_control(const DefenderState& defender,
                                         const IntruderState& intruder,
                                         const BreachSolution& sol);
IntruderControl optimal_intruder_control(const DefenderState& defender,
                                         const IntruderState& intruder, const GameParams& params);

}  // namespace hemiguard
