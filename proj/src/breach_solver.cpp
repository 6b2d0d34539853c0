#include "hemiguard/breach_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hemiguard/errors.hpp"
#include "hemiguard/kernels.hpp"

namespace hemiguard {

namespace {

constexpr int kMaxBisections = 200;

// theta on the perimeter is 0 or pi exactly, where sin(theta) vanishes.
bool on_axis(double theta) {
  const double t = normalize_angle(theta);
  return t == 0.0 || t == kPi;
}

double approach_angle_or_limit(double phi_d, double theta, double nu) {
  if (phi_d == 0.0) return std::acos(nu);
  return approach_angle(phi_d, theta, nu);
}

BreachSolution finish(const GameState& state, const GameParams& params, double theta,
                      double beta) {
  BreachSolution s;
  s.theta_star = theta;
  s.beta_star = beta;
  s.breach_point_azimuth = theta;
  s.tau_d = defender_target_time(state.phi_d(), theta);
  s.tau_a = intruder_target_time(state.r(), theta - state.psi(), params.nu());
  s.p_star = s.tau_d - s.tau_a;
  return s;
}

BreachSolution reflect(BreachSolution s) {
  s.theta_star = -s.theta_star;
  s.breach_point_azimuth = -s.breach_point_azimuth;
  return s;
}

// Closed-form optimum for a defender on the equator.
double equator_optimum(double psi, double r, double nu) {
  const double beta = std::acos(nu);
  return psi - beta + std::acos(std::cos(beta) / r);
}

void check_back_corner(const GameState& state, const GameParams& params) {
  if (state.phi_d() != 0.0) return;
  if (state.psi() == kPi || equator_optimum(state.psi(), state.r(), params.nu()) >= kPi) {
    throw GameError(ErrorCode::DegenerateApproach,
                    "defender on the equator with the optimal breaching point at theta = pi");
  }
}

// psi >= 0 from here on.
BreachSolution solve_nonnegative(const GameState& state, const GameParams& params,
                                 double tol) {
  const double psi = state.psi();
  const double phi = state.phi_d();
  const double r = state.r();
  const double nu = params.nu();

  if (r == 1.0) {
    if (psi == 0.0 && phi == 0.0) {
      throw GameError(ErrorCode::InvalidArgument,
                      "intruder on the perimeter directly below the defender");
    }
    if (phi == 0.0 && psi == kPi) {
      throw GameError(ErrorCode::DegenerateApproach,
                      "defender on the equator antipodal to an intruder on the perimeter");
    }
    return finish(state, params, psi, approach_angle_or_limit(phi, psi, nu));
  }

  if (phi == 0.0) {
    check_back_corner(state, params);
    return finish(state, params, equator_optimum(psi, r, nu), std::acos(nu));
  }

  const SolverBracket bracket = solver_bracket(state, tol);
  auto residual = [&](double t) { return theta_residual(state, params, t); };

  double lo = bracket.theta_lo;
  double hi = bracket.theta_hi;
  if (hi - lo <= tol) return finish(state, params, lo, approach_angle(phi, lo, nu));
  const double probe = std::min(lo + kBracketOffset, hi);
  if (residual(probe) >= 0.0) {
    // Optimum within kBracketOffset of psi (psi == 0 with a single central
    // maximum, or psi == pi).
    if (residual(lo) >= 0.0) return finish(state, params, lo, approach_angle(phi, lo, nu));
    hi = probe;
  } else {
    if (residual(hi) < 0.0) {
      throw GameError(ErrorCode::NoBracket,
                      "residual does not change sign on [" + std::to_string(bracket.theta_lo) +
                          ", " + std::to_string(bracket.theta_hi) + "]");
    }
    lo = probe;
  }

  for (int i = 0; i < kMaxBisections && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double theta = 0.5 * (lo + hi);

  // One Newton step on the residual, kept only if it stays in the final
  // bracket and shrinks |R|.
  const double r0 = residual(theta);
  const double h = 1e-7;
  const double slope = (residual(theta + h) - residual(theta - h)) / (2.0 * h);
  if (std::isfinite(slope) && slope > 0.0) {
    const double polished = theta - r0 / slope;
    if (polished >= lo - tol && polished <= hi + tol &&
        std::abs(residual(polished)) < std::abs(r0)) {
      theta = polished;
    }
  }
  return finish(state, params, theta, approach_angle(phi, theta, nu));
}

}  // namespace

SolverBracket solver_bracket(const GameState& state, double tol) {
  if (!(tol > 0.0)) throw GameError(ErrorCode::InvalidArgument, "tolerance must be positive");
  const double psi = std::abs(state.psi());
  const double tangency = psi + std::acos(1.0 / state.r());
  return SolverBracket{psi, std::min(tangency, kPi), tol};
}

double approach_angle(double phi_d, double theta, double nu) {
  const double c = std::cos(phi_d);
  if (phi_d == 0.0 && on_axis(theta)) {
    throw GameError(ErrorCode::DegenerateApproach,
                    "approach angle undefined for phi_d = 0 at theta = 0 or pi");
  }
  const double s = std::sin(theta);
  if (phi_d == 0.0) return std::acos(std::copysign(nu, s));
  const double sp = std::sin(phi_d);
  // 1 - cos^2(phi) cos^2(theta), written without cancellation.
  const double denom = std::sqrt(sp * sp + c * c * s * s);
  return std::acos(std::clamp(nu * c * s / denom, -1.0, 1.0));
}

double theta_residual(const GameState& state, const GameParams& params, double theta) {
  const double beta = approach_angle(state.phi_d(), theta, params.nu());
  return theta - (state.psi() - beta + std::acos(std::cos(beta) / state.r()));
}

BreachSolution solve(const GameState& state, const GameParams& params, double tol) {
  if (!(tol > 0.0)) throw GameError(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (state.psi() < 0.0) return reflect(solve_nonnegative(state.mirrored(), params, tol));
  return solve_nonnegative(state, params, tol);
}

BreachSolution solve(const DefenderState& defender, const IntruderState& intruder,
                     const GameParams& params, double tol) {
  BreachSolution s = solve(relative_state(defender, intruder), params, tol);
  s.breach_point_azimuth = normalize_angle(defender.psi_d() + s.theta_star);
  return s;
}

BreachSolution solve_with_corner(const GameState& state, const GameParams& params, bool* corner,
                                 double tol) {
  if (corner) *corner = false;
  try {
    return solve(state, params, tol);
  } catch (const GameError& e) {
    if (e.code() != ErrorCode::DegenerateApproach) throw;
  }
  if (corner) *corner = true;
  // Both ways round the equator are equally long; keep the side of the intruder.
  const double theta = state.psi() < 0.0 ? -kPi : kPi;
  return finish(state, params, theta, std::acos(params.nu()));
}

BreachSolution oracle_solve(const GameState& state, const GameParams& params,
                            std::size_t grid_points) {
  if (grid_points < 1000) {
    throw GameError(ErrorCode::InvalidArgument, "oracle needs at least 1000 grid points");
  }
  const bool flip = state.psi() < 0.0;
  const GameState s = flip ? state.mirrored() : state;
  const SolverBracket bracket = solver_bracket(s);
  const double lo = bracket.theta_lo;
  const double hi = bracket.theta_hi;

  const auto best = kernels::parallel::payoff_argmax(s, params, lo, hi, grid_points);
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  double a = std::max(lo, best.theta - step);
  double b = std::min(hi, best.theta + step);
  for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (payoff(s, params, m1) < payoff(s, params, m2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  double theta = 0.5 * (a + b);
  if (payoff(s, params, best.theta) > payoff(s, params, theta)) theta = best.theta;

  BreachSolution out =
      finish(s, params, theta, approach_angle_or_limit(s.phi_d(), theta, params.nu()));
  return flip ? reflect(out) : out;
}

double payoff_slope(const GameState& state, const GameParams& params, double theta, double h) {
  return (payoff(state, params, theta + h) - payoff(state, params, theta - h)) / (2.0 * h);
}

}  // namespace hemiguard
