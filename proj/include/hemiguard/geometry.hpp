#pragma once

#include <numbers>

namespace hemiguard {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Wraps an angle into (-pi, pi].
double normalize_angle(double a) noexcept;

/// Relative configuration z = (psi, phi_d, r) with the defender at azimuth 0.
///
/// psi is the intruder azimuth minus the defender azimuth, phi_d the defender
/// elevation on the unit hemisphere and r the intruder's distance from the
/// hemisphere axis, in perimeter radii. The constructor is the only place
/// where psi is normalized.
class GameState {
 public:
  GameState(double psi, double phi_d, double r);

  double psi() const noexcept { return psi_; }
  double phi_d() const noexcept { return phi_d_; }
  double r() const noexcept { return r_; }

  /// Reflection psi -> -psi.
  GameState mirrored() const { return GameState(-psi_, phi_d_, r_); }

 private:
  double psi_;
  double phi_d_;
  double r_;
};

/// Absolute defender position on the unit hemisphere.
class DefenderState {
 public:
  DefenderState(double psi_d, double phi_d);

  double psi_d() const noexcept { return psi_d_; }
  double phi_d() const noexcept { return phi_d_; }

 private:
  double psi_d_;
  double phi_d_;
};

/// Absolute intruder position on the ground plane.
class IntruderState {
 public:
  IntruderState(double psi_a, double r);

  double psi_a() const noexcept { return psi_a_; }
  double r() const noexcept { return r_; }

 private:
  double psi_a_;
  double r_;
};

GameState relative_state(const DefenderState& defender, const IntruderState& intruder);

/// Speed ratio nu (defender max speed is 1).
class GameParams {
 public:
  explicit GameParams(double nu);

  double nu() const noexcept { return nu_; }

 private:
  double nu_;
};

/// Geodesic arc length from the defender at elevation phi_d (azimuth 0) to
/// the perimeter point at azimuth theta: arccos(cos phi_d cos theta).
double defender_target_time(double phi_d, double theta) noexcept;

/// Straight-line travel time from (r, psi) to the perimeter point whose
/// azimuth is psi + delta.
double intruder_target_time(double r, double delta, double nu) noexcept;

/// Distance x from the breaching point to an intruder at radius r that
/// approaches at angle beta to the perimeter tangent (positive root of
/// r^2 = x^2 + 1 + 2 x sin(beta)).
double chord_from_approach(double r, double beta) noexcept;

/// tau_D(phi_d, theta) - tau_A(r, theta - psi, nu).
double payoff(const GameState& state, const GameParams& params, double theta) noexcept;

}  // namespace hemiguard
