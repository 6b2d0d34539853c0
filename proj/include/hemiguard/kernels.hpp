#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an OpenMP
// version; both return identical results for identical inputs.

#include <cstddef>
#include <span>
#include <vector>

#include "hemiguard/barrier.hpp"
#include "hemiguard/geometry.hpp"

namespace hemiguard::kernels {

struct GridArgmax {
  std::size_t index = 0;
  double theta = 0.0;
  double value = 0.0;
};

/// One cell of a winning-region raster.
struct RegionCell {
  double psi = 0.0;
  double r = 0.0;
  double p_star = 0.0;
  RegionLabel label = RegionLabel::OnBarrier;
};

namespace serial {

/// argmax of payoff(state, params, theta) over n uniform points of [lo, hi];
/// ties go to the lowest index.
GridArgmax payoff_argmax(const GameState& state, const GameParams& params, double lo, double hi,
                         std::size_t n);

/// barrier_point_or_limit at each theta.
std::vector<BarrierSample> barrier_samples(double phi_d, double nu,
                                           std::span<const double> thetas);

/// Optimal payoff and label on the polar grid psi_i x r_j (row-major in psi).
std::vector<RegionCell> region_raster(double phi_d, const GameParams& params,
                                      std::span<const double> psis, std::span<const double> radii,
                                      double band);

}  // namespace serial

namespace parallel {

GridArgmax payoff_argmax(const GameState& state, const GameParams& params, double lo, double hi,
                         std::size_t n);

std::vector<BarrierSample> barrier_samples(double phi_d, double nu,
                                           std::span<const double> thetas);

std::vector<RegionCell> region_raster(double phi_d, const GameParams& params,
                                      std::span<const double> psis, std::span<const double> radii,
                                      double band);

}  // namespace parallel

}  // namespace hemiguard::kernels
