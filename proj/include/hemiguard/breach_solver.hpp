#pragma once

#include <cstddef>

#include "hemiguard/geometry.hpp"

namespace hemiguard {

inline constexpr double kDefaultSolveTol = 1e-12;
inline constexpr double kBracketOffset = 1e-9;
inline constexpr double kStationarityStep = 1e-6;

/// Optimal breaching geometry for one configuration.
struct BreachSolution {
  double theta_star = 0.0;            ///< breaching angle, relative to the defender azimuth
  double beta_star = 0.0;             ///< approach angle at the breaching point
  double breach_point_azimuth = 0.0;  ///< absolute azimuth psi_D + theta_star
  double tau_d = 0.0;
  double tau_a = 0.0;
  double p_star = 0.0;                ///< tau_d - tau_a
};

/// Search interval [psi, theta_t] for psi >= 0, with theta_t the tangency angle
/// psi + arccos(1/r) capped at pi (past pi the defender's arc shrinks again).
struct SolverBracket {
  double theta_lo;
  double theta_hi;
  double tol;
};

SolverBracket solver_bracket(const GameState& state, double tol = kDefaultSolveTol);

/// Approach angle that makes theta stationary for the payoff:
/// arccos(nu cos(phi_d) sin(theta) / sqrt(1 - cos^2(phi_d) cos^2(theta))).
/// Throws DegenerateApproach when phi_d == 0 and theta is 0 or pi.
double approach_angle(double phi_d, double theta, double nu);

/// theta - (psi - beta(theta) + arccos(cos(beta(theta)) / r)); negative where the
/// payoff still increases in theta, positive past the optimum.
double theta_residual(const GameState& state, const GameParams& params, double theta);

/// Unique optimal breaching point. Inputs with psi < 0 are solved in the
/// mirrored frame and reflected back; at psi == 0 the theta >= 0 branch is returned.
///
/// Throws NoBracket when the residual keeps one sign over the bracket and
/// DegenerateApproach for the phi_d == 0 configuration whose optimum sits at
/// theta = pi.
BreachSolution solve(const GameState& state, const GameParams& params,
                     double tol = kDefaultSolveTol);

/// Same, for absolute agent positions; breach_point_azimuth is absolute.
BreachSolution solve(const DefenderState& defender, const IntruderState& intruder,
                     const GameParams& params, double tol = kDefaultSolveTol);

/// solve(), except that the phi_d == 0 back corner returns the kink point
/// theta = +-pi (with the one-sided approach angle arccos nu) instead of throwing.
/// `corner` is set when that substitution happened.
BreachSolution solve_with_corner(const GameState& state, const GameParams& params,
                                 bool* corner = nullptr, double tol = kDefaultSolveTol);

/// Brute-force reference: dense uniform grid over the bracket, then a ternary
/// search around the best grid point. Requires grid_points >= 1000.
BreachSolution oracle_solve(const GameState& state, const GameParams& params,
                            std::size_t grid_points);

/// Central-difference dp/dtheta.
double payoff_slope(const GameState& state, const GameParams& params, double theta,
                    double h = kStationarityStep);

}  // namespace hemiguard
