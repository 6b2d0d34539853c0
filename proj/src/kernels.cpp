#include "hemiguard/kernels.hpp"

#include <cmath>
#include <exception>

#include "hemiguard/breach_solver.hpp"
#include "hemiguard/errors.hpp"

namespace hemiguard::kernels {

namespace {

// Total order: larger value wins, then lower index. NaN never wins.
bool better(const GridArgmax& a, const GridArgmax& b) {
  if (std::isnan(b.value)) return !std::isnan(a.value) || a.index < b.index;
  if (std::isnan(a.value)) return false;
  if (a.value != b.value) return a.value > b.value;
  return a.index < b.index;
}

double grid_theta(double lo, double hi, std::size_t i, std::size_t n) {
  if (i + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

void check_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(lo <= hi)) {
    throw GameError(ErrorCode::InvalidArgument, "argmax grid needs n >= 2 and lo <= hi");
  }
}

RegionCell raster_cell(double phi_d, const GameParams& params, double psi, double r,
                       double band) {
  const BreachSolution sol = solve_with_corner(GameState(psi, phi_d, r), params);
  return RegionCell{psi, r, sol.p_star, label_for_payoff(sol.p_star, band)};
}

}  // namespace

namespace serial {

GridArgmax payoff_argmax(const GameState& state, const GameParams& params, double lo, double hi,
                         std::size_t n) {
  check_grid(lo, hi, n);
  GridArgmax best{0, lo, payoff(state, params, lo)};
  for (std::size_t i = 1; i < n; ++i) {
    const double t = grid_theta(lo, hi, i, n);
    const GridArgmax cand{i, t, payoff(state, params, t)};
    if (better(cand, best)) best = cand;
  }
  return best;
}

std::vector<BarrierSample> barrier_samples(double phi_d, double nu,
                                           std::span<const double> thetas) {
  std::vector<BarrierSample> out(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    out[i] = barrier_point_or_limit(phi_d, nu, thetas[i]);
  }
  return out;
}

std::vector<RegionCell> region_raster(double phi_d, const GameParams& params,
                                      std::span<const double> psis, std::span<const double> radii,
                                      double band) {
  std::vector<RegionCell> out(psis.size() * radii.size());
  for (std::size_t i = 0; i < psis.size(); ++i) {
    for (std::size_t j = 0; j < radii.size(); ++j) {
      out[i * radii.size() + j] = raster_cell(phi_d, params, psis[i], radii[j], band);
    }
  }
  return out;
}

}  // namespace serial

namespace parallel {

GridArgmax payoff_argmax(const GameState& state, const GameParams& params, double lo, double hi,
                         std::size_t n) {
  check_grid(lo, hi, n);
  GridArgmax best{0, lo, payoff(state, params, lo)};
  const auto count = static_cast<long long>(n);
#pragma omp parallel
  {
    GridArgmax local = best;
#pragma omp for schedule(static) nowait
    for (long long i = 1; i < count; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const double t = grid_theta(lo, hi, k, n);
      const GridArgmax cand{k, t, payoff(state, params, t)};
      if (better(cand, local)) local = cand;
    }
#pragma omp critical(hemiguard_argmax)
    if (better(local, best)) best = local;
  }
  return best;
}

std::vector<BarrierSample> barrier_samples(double phi_d, double nu,
                                           std::span<const double> thetas) {
  std::vector<BarrierSample> out(thetas.size());
  const auto count = static_cast<long long>(thetas.size());
  // Exceptions may not leave an OpenMP region; validate on one point first.
  if (count > 0) out[0] = barrier_point_or_limit(phi_d, nu, thetas[0]);
#pragma omp parallel for schedule(static)
  for (long long i = 1; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = barrier_point_or_limit(phi_d, nu, thetas[k]);
  }
  return out;
}

std::vector<RegionCell> region_raster(double phi_d, const GameParams& params,
                                      std::span<const double> psis, std::span<const double> radii,
                                      double band) {
  const std::size_t cols = radii.size();
  std::vector<RegionCell> out(psis.size() * cols);
  const auto count = static_cast<long long>(out.size());
  std::vector<std::exception_ptr> errors(out.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = raster_cell(phi_d, params, psis[k / cols], radii[k % cols], band);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace parallel

}  // namespace hemiguard::kernels
