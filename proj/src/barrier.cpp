#include "hemiguard/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hemiguard/breach_solver.hpp"
#include "hemiguard/errors.hpp"
#include "hemiguard/kernels.hpp"

namespace hemiguard {

namespace {

constexpr std::size_t kMinSamples = 16;

void check_inputs(double phi_d, double nu) {
  (void)GameParams(nu);
  if (!(phi_d >= 0.0 && phi_d <= kHalfPi)) {
    throw GameError(ErrorCode::InvalidArgument,
                    "defender elevation must lie in [0, pi/2], got " + std::to_string(phi_d));
  }
}

// Uniform over [-pi, pi]; theta(i) == -theta(n-1-i) exactly.
double sample_theta(std::size_t i, std::size_t n) {
  const double num = 2.0 * static_cast<double>(i) - static_cast<double>(n - 1);
  return kPi * num / static_cast<double>(n - 1);
}

BarrierSample mirror(BarrierSample s) {
  s.theta = -s.theta;
  s.psi = -s.psi;
  return s;
}

BarrierSample point_from(double phi_d, double nu, double theta, double beta) {
  const double a = std::abs(theta);
  const double x = nu * defender_target_time(phi_d, a);
  return place_on_normal(theta, beta, x);
}

}  // namespace

std::string_view to_string(RegionLabel label) noexcept {
  switch (label) {
    case RegionLabel::IntruderWinning: return "IntruderWinning";
    case RegionLabel::DefenderWinning: return "DefenderWinning";
    case RegionLabel::OnBarrier: return "OnBarrier";
  }
  return "Unknown";
}

BarrierSample place_on_normal(double theta, double beta, double x) {
  const double a = std::abs(theta);
  BarrierSample s;
  s.theta = a;
  s.beta = beta;
  s.x = x;
  s.r = std::sqrt(x * x + 1.0 + 2.0 * x * std::sin(beta));
  s.psi = a + beta - std::acos(std::clamp(std::cos(beta) / s.r, -1.0, 1.0));
  return theta < 0.0 ? mirror(s) : s;
}

BarrierSample barrier_point(double phi_d, double nu, double theta) {
  check_inputs(phi_d, nu);
  const double t = normalize_angle(theta);
  const double beta = approach_angle(phi_d, std::abs(t), nu);
  return point_from(phi_d, nu, t, beta);
}

BarrierSample barrier_point_or_limit(double phi_d, double nu, double theta) {
  check_inputs(phi_d, nu);
  const double t = normalize_angle(theta);
  if (phi_d == 0.0) return point_from(phi_d, nu, t, std::acos(nu));
  // The mirrored copy of theta = pi stays at -pi rather than wrapping.
  const double keep = theta == -kPi ? -kPi : t;
  return point_from(phi_d, nu, keep, approach_angle(phi_d, std::abs(keep), nu));
}

BarrierCurve barrier_curve(double phi_d, double nu, std::size_t n_samples) {
  check_inputs(phi_d, nu);
  if (n_samples < kMinSamples) {
    throw GameError(ErrorCode::InvalidArgument, "barrier_curve needs at least 16 samples");
  }
  // Build the theta >= 0 half, then mirror it.
  const std::size_t first_upper = n_samples / 2;
  std::vector<double> thetas;
  thetas.reserve(n_samples - first_upper);
  for (std::size_t i = first_upper; i < n_samples; ++i) {
    thetas.push_back(std::abs(sample_theta(i, n_samples)));
  }
  const std::vector<BarrierSample> upper = kernels::parallel::barrier_samples(phi_d, nu, thetas);

  BarrierCurve curve{phi_d, nu, 0.0, std::vector<BarrierSample>(n_samples)};
  for (std::size_t k = 0; k < upper.size(); ++k) {
    const std::size_t i = first_upper + k;
    curve.samples[i] = upper[k];
    const std::size_t j = n_samples - 1 - i;
    if (j != i) curve.samples[j] = mirror(upper[k]);
  }
  return curve;
}

BarrierCurve level_set(double phi_d, double nu, double k, std::size_t n_samples) {
  if (!std::isfinite(k)) throw GameError(ErrorCode::InvalidArgument, "level must be finite");
  BarrierCurve curve = barrier_curve(phi_d, nu, n_samples);
  curve.level = k;
  if (k == 0.0) return curve;
  for (BarrierSample& s : curve.samples) {
    const double x = s.x - nu * k;
    if (x < 0.0) {
      throw GameError(ErrorCode::LevelSetInsidePerimeter,
                      "level " + std::to_string(k) + " passes the breaching point at theta = " +
                          std::to_string(s.theta));
    }
    s = place_on_normal(s.theta, s.beta, x);
  }
  return curve;
}

RegionLabel label_for_payoff(double p_star, double band) noexcept {
  if (p_star > band) return RegionLabel::IntruderWinning;
  if (p_star < -band) return RegionLabel::DefenderWinning;
  return RegionLabel::OnBarrier;
}

RegionLabel classify(const GameState& state, const GameParams& params, double band) {
  if (!(band >= 0.0)) throw GameError(ErrorCode::InvalidArgument, "band must be >= 0");
  return label_for_payoff(solve(state, params).p_star, band);
}

double curvature(double phi_d, double nu, double theta, double h) {
  check_inputs(phi_d, nu);
  if (phi_d == 0.0) {
    throw GameError(ErrorCode::SingularCurvature,
                    "barrier curvature is not defined for a defender on the equator");
  }
  if (!(h > 0.0)) throw GameError(ErrorCode::InvalidArgument, "step must be positive");

  const BarrierSample c = barrier_point(phi_d, nu, theta);
  const BarrierSample m = barrier_point(phi_d, nu, theta - h);
  const BarrierSample p = barrier_point(phi_d, nu, theta + h);
  // psi offsets from the centre, unwrapped across +-pi.
  const double dpm = normalize_angle(m.psi - c.psi);
  const double dpp = normalize_angle(p.psi - c.psi);

  const double r_t = (p.r - m.r) / (2.0 * h);
  const double r_tt = (p.r - 2.0 * c.r + m.r) / (h * h);
  const double psi_t = (dpp - dpm) / (2.0 * h);
  const double psi_tt = (dpp + dpm) / (h * h);

  const double r1 = r_t / psi_t;
  const double r2 = (r_tt * psi_t - r_t * psi_tt) / (psi_t * psi_t * psi_t);
  const double r0 = c.r;
  return std::abs(r0 * r0 + 2.0 * r1 * r1 - r0 * r2) / std::pow(r0 * r0 + r1 * r1, 1.5);
}

std::array<double, 2> intruder_position(const BarrierSample& s) noexcept {
  return {s.r * std::cos(s.psi), s.r * std::sin(s.psi)};
}

std::array<double, 2> breach_position(const BarrierSample& s) noexcept {
  return {std::cos(s.theta), std::sin(s.theta)};
}

double enclosed_area(const BarrierCurve& curve) noexcept {
  const auto& v = curve.samples;
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto a = intruder_position(v[i]);
    const auto b = intruder_position(v[(i + 1) % v.size()]);
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return 0.5 * std::abs(twice);
}

double aspect_ratio(const BarrierCurve& curve) noexcept {
  if (curve.samples.empty()) return 1.0;
  const auto [lo, hi] = std::minmax_element(
      curve.samples.begin(), curve.samples.end(),
      [](const BarrierSample& a, const BarrierSample& b) { return a.r < b.r; });
  return hi->r / lo->r;
}

}  // namespace hemiguard
