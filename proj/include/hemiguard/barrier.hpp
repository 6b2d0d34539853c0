#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "hemiguard/geometry.hpp"

namespace hemiguard {

inline constexpr double kDefaultRegionBand = 1e-6;
inline constexpr double kDefaultCurvatureStep = 1e-4;

/// Intruder position that ties with the defender when breaching at theta.
struct BarrierSample {
  double theta = 0.0;  ///< breaching angle
  double beta = 0.0;   ///< approach angle
  double x = 0.0;      ///< distance from the breaching point
  double r = 0.0;
  double psi = 0.0;
};

/// Samples of {z_A | p = k} for a fixed defender elevation, ordered by theta
/// over [-pi, pi]. For k = 0 this is the barrier.
struct BarrierCurve {
  double phi_d = 0.0;
  double nu = 0.0;
  double level = 0.0;
  std::vector<BarrierSample> samples;
};

enum class RegionLabel { IntruderWinning, DefenderWinning, OnBarrier };

std::string_view to_string(RegionLabel label) noexcept;

/// Throws DegenerateApproach at the phi_d == 0, theta in {0, pi} corners.
BarrierSample barrier_point(double phi_d, double nu, double theta);

/// barrier_point() with the one-sided limit beta = arccos(nu) substituted at
/// the phi_d == 0 corners.
BarrierSample barrier_point_or_limit(double phi_d, double nu, double theta);

/// Intruder position for breaching angle theta, approach angle beta and
/// distance x, mirrored for theta < 0.
BarrierSample place_on_normal(double theta, double beta, double x);

/// n_samples uniform breaching angles over [-pi, pi]; the curve is built on
/// [0, pi] and mirrored, so samples i and n-1-i are exact reflections.
BarrierCurve barrier_curve(double phi_d, double nu, std::size_t n_samples);

/// Every barrier sample pushed along its breaching-point normal by nu*|k|:
/// outward for k < 0, inward for k > 0. Throws LevelSetInsidePerimeter when an
/// inward push would pass the breaching point.
BarrierCurve level_set(double phi_d, double nu, double k, std::size_t n_samples);

RegionLabel label_for_payoff(double p_star, double band = kDefaultRegionBand) noexcept;

/// Winning-region label from the optimal payoff; solver errors propagate.
RegionLabel classify(const GameState& state, const GameParams& params,
                     double band = kDefaultRegionBand);

/// Curvature of the barrier at breaching angle theta, from the polar-curve
/// formula |r^2 + 2 r'^2 - r r''| / (r^2 + r'^2)^(3/2) with r' = dr/dpsi.
/// The derivatives come from central differences in theta and the chain rule.
/// Throws SingularCurvature for phi_d == 0.
double curvature(double phi_d, double nu, double theta, double h = kDefaultCurvatureStep);

std::array<double, 2> intruder_position(const BarrierSample& s) noexcept;
std::array<double, 2> breach_position(const BarrierSample& s) noexcept;

/// Shoelace area of the polygon through the samples.
double enclosed_area(const BarrierCurve& curve) noexcept;

/// max r / min r over the samples.
double aspect_ratio(const BarrierCurve& curve) noexcept;

}  // namespace hemiguard
