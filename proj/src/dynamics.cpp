#include "hemiguard/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hemiguard/errors.hpp"

namespace hemiguard {

namespace {

struct Frame {
  double psi;
  double phi;
  Vec3 e_phi;  // toward increasing elevation
  Vec3 e_psi;  // toward increasing azimuth
};

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

Vec3 normalized(Vec3 v) {
  const double n = std::sqrt(dot(v, v));
  for (double& c : v) c /= n;
  return v;
}

Frame frame_at(const Vec3& d, double fallback_azimuth) {
  const double rho = std::hypot(d[0], d[1]);
  Frame f;
  f.psi = rho > 1e-14 ? std::atan2(d[1], d[0]) : fallback_azimuth;
  f.phi = std::atan2(d[2], rho);
  const double sp = std::sin(f.phi), cp = std::cos(f.phi);
  const double ss = std::sin(f.psi), cs = std::cos(f.psi);
  f.e_phi = {-sp * cs, -sp * ss, cp};
  f.e_psi = {-ss, cs, 0.0};
  return f;
}

Vec3 axpy(const Vec3& x, double a, const Vec3& y) {
  return {x[0] + a * y[0], x[1] + a * y[1], x[2] + a * y[2]};
}
Vec2 axpy(const Vec2& x, double a, const Vec2& y) { return {x[0] + a * y[0], x[1] + a * y[1]}; }

Vec3 rk4_sum(const Vec3& k1, const Vec3& k2, const Vec3& k3, const Vec3& k4) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[i] = (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
  return out;
}
Vec2 rk4_sum(const Vec2& k1, const Vec2& k2, const Vec2& k3, const Vec2& k4) {
  return {(k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0,
          (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0};
}

// Upper hemisphere, unit norm.
Vec3 project(Vec3 d) {
  d[2] = std::max(d[2], 0.0);
  return normalized(d);
}

DefenderState to_defender(const Vec3& d, double previous_azimuth) {
  const double rho = std::hypot(d[0], d[1]);
  const double psi = rho > 1e-14 ? std::atan2(d[1], d[0]) : previous_azimuth;
  const double phi = std::clamp(std::atan2(d[2], rho), 0.0, kHalfPi);
  return DefenderState(psi, phi);
}

IntruderState to_intruder(const Vec2& a) {
  return IntruderState(std::atan2(a[1], a[0]), std::max(std::hypot(a[0], a[1]), 1.0));
}

void check_speed(double s, const char* who) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw GameError(ErrorCode::InvalidArgument,
                    std::string(who) + " speed fraction must lie in [0, 1]");
  }
}

}  // namespace

std::string_view to_string(TerminalKind kind) noexcept {
  switch (kind) {
    case TerminalKind::DefenderWin: return "DefenderWin";
    case TerminalKind::IntruderWin: return "IntruderWin";
    case TerminalKind::Timeout: return "Timeout";
  }
  return "Unknown";
}

GameState relative_state(const AgentStates& s) {
  return relative_state(s.defender, s.intruder);
}

StateRate state_derivative(const GameState& state, const DefenderControl& dc,
                           const IntruderControl& ic, const GameParams& params) {
  check_speed(dc.speed_fraction, "defender");
  check_speed(ic.speed_fraction, "intruder");
  const double s = dc.speed_fraction;
  const double w = dc.omega_d;
  const double c = std::cos(state.phi_d());
  const double lateral = std::sqrt(std::max(0.0, s * s - w * w));
  if (c < kPoleCos && lateral > 0.0) {
    throw GameError(ErrorCode::PoleSingularity, "azimuthal rate undefined at the pole");
  }
  const double v = params.nu() * ic.speed_fraction;
  const double defender_psi_dot = lateral > 0.0 ? dc.azimuth_sign * lateral / c : 0.0;
  return StateRate{v * std::sin(ic.gamma_a) / state.r() - defender_psi_dot, w,
                   -v * std::cos(ic.gamma_a)};
}

Vec3 defender_position(const DefenderState& d) noexcept {
  const double c = std::cos(d.phi_d());
  return {c * std::cos(d.psi_d()), c * std::sin(d.psi_d()), std::sin(d.phi_d())};
}

Vec2 intruder_position(const IntruderState& a) noexcept {
  return {a.r() * std::cos(a.psi_a()), a.r() * std::sin(a.psi_a())};
}

DefenderControl admissible(const DefenderControl& dc, double phi_d) noexcept {
  DefenderControl out = dc;
  const double s = dc.speed_fraction;
  out.omega_d = std::clamp(dc.omega_d, -s, s);
  if (phi_d <= 0.0 && out.omega_d < 0.0) out.omega_d = 0.0;
  out.azimuth_sign = dc.azimuth_sign < 0 ? -1 : 1;
  return out;
}

Vec3 defender_velocity(const Vec3& d, const DefenderControl& dc, double fallback_azimuth) {
  check_speed(dc.speed_fraction, "defender");
  const Frame f = frame_at(normalized(d), dc.pole_meridian.value_or(fallback_azimuth));
  const DefenderControl c = admissible(dc, f.phi);
  const double s = c.speed_fraction;
  const double lateral = c.azimuth_sign * std::sqrt(std::max(0.0, s * s - c.omega_d * c.omega_d));
  if (std::cos(f.phi) < kPoleCos && lateral != 0.0) {
    throw GameError(ErrorCode::PoleSingularity, "azimuthal direction undefined at the pole");
  }
  Vec3 v;
  for (int i = 0; i < 3; ++i) v[i] = c.omega_d * f.e_phi[i] + lateral * f.e_psi[i];
  return v;
}

Vec2 intruder_velocity(const Vec2& a, const IntruderControl& ic, const GameParams& params) {
  check_speed(ic.speed_fraction, "intruder");
  const double r = std::hypot(a[0], a[1]);
  const Vec2 e_r{a[0] / r, a[1] / r};
  const Vec2 e_psi{-e_r[1], e_r[0]};
  const double v = params.nu() * ic.speed_fraction;
  const double cg = std::cos(ic.gamma_a), sg = std::sin(ic.gamma_a);
  return {v * (-cg * e_r[0] + sg * e_psi[0]), v * (-cg * e_r[1] + sg * e_psi[1])};
}

std::array<double, 2> defender_rates(const DefenderState& d, const DefenderControl& dc) {
  const Vec3 pos = defender_position(d);
  const Vec3 v = defender_velocity(pos, dc, d.psi_d());
  const Frame f = frame_at(pos, dc.pole_meridian.value_or(d.psi_d()));
  const double c = std::cos(f.phi);
  const double psi_dot = c < kPoleCos ? 0.0 : dot(v, f.e_psi) / c;
  return {dot(v, f.e_phi), psi_dot};
}

StepResult integrate_step(const AgentStates& s, const DefenderControl& dc,
                          const IntruderControl& ic, const GameParams& params, double dt) {
  if (!(dt > 0.0)) throw GameError(ErrorCode::InvalidArgument, "dt must be positive");
  const double az = s.defender.psi_d();
  const Vec3 d0 = defender_position(s.defender);
  const Vec2 a0 = intruder_position(s.intruder);

  const Vec3 k1 = defender_velocity(d0, dc, az);
  const Vec2 l1 = intruder_velocity(a0, ic, params);
  const Vec3 k2 = defender_velocity(axpy(d0, 0.5 * dt, k1), dc, az);
  const Vec2 l2 = intruder_velocity(axpy(a0, 0.5 * dt, l1), ic, params);
  const Vec3 k3 = defender_velocity(axpy(d0, 0.5 * dt, k2), dc, az);
  const Vec2 l3 = intruder_velocity(axpy(a0, 0.5 * dt, l2), ic, params);
  const Vec3 k4 = defender_velocity(axpy(d0, dt, k3), dc, az);
  const Vec2 l4 = intruder_velocity(axpy(a0, dt, l3), ic, params);

  Vec3 d1 = project(axpy(d0, dt, rk4_sum(k1, k2, k3, k4)));
  Vec2 a1 = axpy(a0, dt, rk4_sum(l1, l2, l3, l4));

  const double r0 = s.intruder.r();
  const double r1 = std::hypot(a1[0], a1[1]);
  if (r1 >= 1.0) {
    return StepResult{AgentStates{to_defender(d1, az), to_intruder(a1)}, dt, false};
  }
  // Cut the step where the straight segment a0 -> a1 meets the unit circle,
  // linearized in r.
  const double f = r0 > r1 ? std::clamp((r0 - 1.0) / (r0 - r1), 0.0, 1.0) : 0.0;
  Vec3 dc_cut;
  for (int i = 0; i < 3; ++i) dc_cut[i] = d0[i] + f * (d1[i] - d0[i]);
  Vec2 ac{a0[0] + f * (a1[0] - a0[0]), a0[1] + f * (a1[1] - a0[1])};
  const double rc = std::hypot(ac[0], ac[1]);
  ac = {ac[0] / rc, ac[1] / rc};
  return StepResult{AgentStates{to_defender(project(dc_cut), az), to_intruder(ac)}, f * dt,
                    true};
}

std::optional<TerminalEvent> check_terminal(const GameState& state, double t, double tol_breach,
                                            double tol_capture) {
  const double separation = std::hypot(state.psi(), state.phi_d());
  const bool breached = state.r() <= 1.0 + tol_breach;
  const bool captured = separation <= tol_capture;
  if (breached && captured) {
    throw GameError(ErrorCode::AmbiguousTerminal,
                    "intruder reached the perimeter inside the capture tolerance");
  }
  if (breached) return TerminalEvent{TerminalKind::IntruderWin, t, state};
  if (captured) return TerminalEvent{TerminalKind::DefenderWin, t, state};
  return std::nullopt;
}

namespace {

// Unit tangent at d of the great circle toward the equator point at b_az.
std::optional<Vec3> toward(const Vec3& d, double b_az) {
  const Vec3 b{std::cos(b_az), std::sin(b_az), 0.0};
  const double db = dot(d, b);
  Vec3 t{b[0] - db * d[0], b[1] - db * d[1], b[2] - db * d[2]};
  const double n = std::sqrt(dot(t, t));
  if (n < 1e-15) return std::nullopt;
  for (double& c : t) c /= n;
  return t;
}

// Local maximum of the payoff on the far side of the intruder from the one
// solve() returns, as (theta, p). The mirrored bracket starts with a local
// minimum near psi, so the residual is scanned for its first rise from
// negative to positive and bisected there.
std::optional<std::pair<double, double>> other_branch(const GameState& rel,
                                                      const GameParams& params) {
  constexpr int kScan = 64;
  const GameState m = rel.psi() >= 0.0 ? rel.mirrored() : rel;
  const double a = m.psi() + kBracketOffset;
  const double b = std::min(m.psi() + std::acos(1.0 / m.r()), kPi);
  if (!(a < b)) return std::nullopt;
  double lo = 0.0, hi = 0.0;
  try {
    auto residual = [&](double t) { return theta_residual(m, params, t); };
    bool negative = false, found = false;
    double prev = a;
    for (int i = 0; i <= kScan && !found; ++i) {
      const double t = a + (b - a) * i / kScan;
      const double v = residual(t);
      if (v < 0.0) {
        negative = true;
      } else if (negative) {
        lo = prev, hi = t, found = true;
      }
      prev = t;
    }
    if (!found) return std::nullopt;
    for (int i = 0; i < 100 && hi - lo > kDefaultSolveTol; ++i) {
      const double mid = 0.5 * (lo + hi);
      (residual(mid) < 0.0 ? lo : hi) = mid;
    }
  } catch (const GameError&) {
    return std::nullopt;
  }
  const double theta = rel.psi() >= 0.0 ? -0.5 * (lo + hi) : 0.5 * (lo + hi);
  return std::pair{theta, defender_target_time(rel.phi_d(), theta) -
                              intruder_target_time(rel.r(), theta - rel.psi(), params.nu())};
}

}  // namespace

DefenderControl optimal_defender_control(const DefenderState& defender, const GameState& rel,
                                         const GameParams& params, const BreachSolution& sol,
                                         bool corner, double hold) {
  // Equator with the breaching point behind: climb and let the tie break.
  if (corner) return DefenderControl{1.0, 1, 1.0, std::nullopt};
  const double phi = defender.phi_d();
  const double b_az = defender.psi_d() + sol.theta_star;
  if (std::cos(phi) < kPoleCos) {
    return DefenderControl{-1.0, 1, 1.0, normalize_angle(b_az)};
  }
  const Vec3 d = defender_position(defender);
  const std::optional<Vec3> t1 = toward(d, b_az);
  if (!t1) return DefenderControl{0.0, 1, 1.0, std::nullopt};
  const Frame f = frame_at(d, defender.psi_d());
  Vec3 u = *t1;

  // Near a tie between two maxima, a held heading toward one lets the other
  // overtake it within the step. Pick the heading that minimizes the larger
  // of the two linearized payoffs after the hold instead.
  const auto other = hold > 0.0 ? other_branch(rel, params) : std::nullopt;
  const std::optional<Vec3> t2 = other ? toward(d, defender.psi_d() + other->first) : std::nullopt;
  if (t2) {
    Vec3 hi = *t1, lo = *t2;
    double gap = sol.p_star - other->second;
    if (gap < 0.0) std::swap(hi, lo), gap = -gap;
    const double c = std::clamp(dot(hi, lo), -1.0, 1.0);
    if (gap < hold * (1.0 - c)) {
      Vec3 e2{lo[0] - c * hi[0], lo[1] - c * hi[1], lo[2] - c * hi[2]};
      double n = std::sqrt(dot(e2, e2));
      if (n < 1e-12) e2 = f.e_phi, n = 1.0;
      const double alpha = std::acos(c);
      const double x = 0.5 * alpha - std::asin(std::min(1.0, gap / (2.0 * hold * std::sin(0.5 * alpha))));
      for (int i = 0; i < 3; ++i) u[i] = std::cos(x) * hi[i] + std::sin(x) * e2[i] / n;
    } else {
      u = hi;
    }
  }
  const double omega = std::clamp(dot(u, f.e_phi), -1.0, 1.0);
  const double lateral = dot(u, f.e_psi);
  const int sign = lateral < 0.0 || (lateral == 0.0 && rel.psi() < 0.0) ? -1 : 1;
  return DefenderControl{omega, sign, 1.0, std::nullopt};
}

DefenderControl optimal_defender_control(const DefenderState& defender,
                                         const IntruderState& intruder,
                                         const GameParams& params) {
  const GameState rel = relative_state(defender, intruder);
  bool corner = false;
  const BreachSolution sol = solve_with_corner(rel, params, &corner);
  return optimal_defender_control(defender, rel, params, sol, corner);
}

IntruderControl optimal_intruder_control(const DefenderState& defender,
                                         const IntruderState& intruder,
                                         const BreachSolution& sol) {
  const double b_az = defender.psi_d() + sol.theta_star;
  const Vec2 a = intruder_position(intruder);
  Vec2 u{std::cos(b_az) - a[0], std::sin(b_az) - a[1]};
  const double n = std::hypot(u[0], u[1]);
  if (n < 1e-15) return IntruderControl{0.0, 1.0};
  u = {u[0] / n, u[1] / n};
  const double r = intruder.r();
  const Vec2 e_r{a[0] / r, a[1] / r};
  const Vec2 e_psi{-e_r[1], e_r[0]};
  return IntruderControl{normalize_angle(std::atan2(dot(u, e_psi), -dot(u, e_r))), 1.0};
}

IntruderControl optimal_intruder_control(const DefenderState& defender,
                                         const IntruderState& intruder,
                                         const GameParams& params) {
  const BreachSolution sol = solve_with_corner(relative_state(defender, intruder), params);
  return optimal_intruder_control(defender, intruder, sol);
}

}  // namespace hemiguard
