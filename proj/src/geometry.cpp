#include "hemiguard/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hemiguard/errors.hpp"

namespace hemiguard {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::DegenerateApproach: return "DegenerateApproach";
    case ErrorCode::SingularCurvature: return "SingularCurvature";
    case ErrorCode::LevelSetInsidePerimeter: return "LevelSetInsidePerimeter";
    case ErrorCode::PoleSingularity: return "PoleSingularity";
    case ErrorCode::AmbiguousTerminal: return "AmbiguousTerminal";
  }
  return "Unknown";
}

double normalize_angle(double a) noexcept {
  if (a > -kPi && a <= kPi) return a;
  double w = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw GameError(ErrorCode::InvalidArgument, what);
}

void check_elevation(double phi_d) {
  require(std::isfinite(phi_d) && phi_d >= 0.0 && phi_d <= kHalfPi,
          "defender elevation must lie in [0, pi/2], got " + std::to_string(phi_d));
}

void check_radius(double r) {
  require(std::isfinite(r) && r >= 1.0,
          "intruder radius must be >= 1, got " + std::to_string(r));
}

}  // namespace

GameState::GameState(double psi, double phi_d, double r)
    : psi_(normalize_angle(psi)), phi_d_(phi_d), r_(r) {
  require(std::isfinite(psi), "psi must be finite");
  check_elevation(phi_d);
  check_radius(r);
}

DefenderState::DefenderState(double psi_d, double phi_d)
    : psi_d_(normalize_angle(psi_d)), phi_d_(phi_d) {
  require(std::isfinite(psi_d), "psi_d must be finite");
  check_elevation(phi_d);
}

IntruderState::IntruderState(double psi_a, double r) : psi_a_(normalize_angle(psi_a)), r_(r) {
  require(std::isfinite(psi_a), "psi_a must be finite");
  check_radius(r);
}

GameState relative_state(const DefenderState& defender, const IntruderState& intruder) {
  return GameState(intruder.psi_a() - defender.psi_d(), defender.phi_d(), intruder.r());
}

GameParams::GameParams(double nu) : nu_(nu) {
  require(std::isfinite(nu) && nu > 0.0 && nu <= 1.0,
          "speed ratio nu must lie in (0, 1], got " + std::to_string(nu));
}

double defender_target_time(double phi_d, double theta) noexcept {
  return std::acos(std::clamp(std::cos(phi_d) * std::cos(theta), -1.0, 1.0));
}

double intruder_target_time(double r, double delta, double nu) noexcept {
  const double chord2 = r * r + 1.0 - 2.0 * r * std::cos(delta);
  return std::sqrt(std::max(chord2, 0.0)) / nu;
}

double chord_from_approach(double r, double beta) noexcept {
  const double c = std::cos(beta);
  return -std::sin(beta) + std::sqrt(std::max(r * r - c * c, 0.0));
}

double payoff(const GameState& state, const GameParams& params, double theta) noexcept {
  return defender_target_time(state.phi_d(), theta) -
         intruder_target_time(state.r(), theta - state.psi(), params.nu());
}

}  // namespace hemiguard
