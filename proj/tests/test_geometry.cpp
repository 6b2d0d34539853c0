#include <doctest.h>

#include <cmath>
#include <random>

#include "hemiguard/errors.hpp"
#include "hemiguard/geometry.hpp"
#include "oracles.hpp"

using namespace hemiguard;

TEST_CASE("normalize_angle maps into (-pi, pi]") {
  CHECK(normalize_angle(kPi) == kPi);
  CHECK(normalize_angle(-kPi) == kPi);
  CHECK(normalize_angle(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(normalize_angle(0.5) == 0.5);
  CHECK(normalize_angle(2.0 * kPi + 0.25) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(normalize_angle(-2.0 * kPi - 0.25) == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("state types validate and normalize") {
  CHECK(GameState(kPi + 0.5, 0.3, 2.0).psi() == doctest::Approx(-kPi + 0.5));
  CHECK_THROWS_AS(GameState(0.0, -0.1, 2.0), GameError);
  CHECK_THROWS_AS(GameState(0.0, kHalfPi + 1e-9, 2.0), GameError);
  CHECK_THROWS_AS(GameState(0.0, 0.3, 0.999), GameError);
  CHECK_THROWS_AS(GameState(NAN, 0.3, 2.0), GameError);
  CHECK_THROWS_AS(GameParams(0.0), GameError);
  CHECK_THROWS_AS(GameParams(1.0 + 1e-12), GameError);
  CHECK_NOTHROW(GameParams(1.0));
  CHECK_THROWS_AS(IntruderState(0.0, 0.5), GameError);
  try {
    GameParams bad(-1.0);
  } catch (const GameError& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("relative_state subtracts azimuths") {
  const GameState z = relative_state(DefenderState(3.0, 0.2), IntruderState(-3.0, 1.5));
  CHECK(z.psi() == doctest::Approx(2.0 * kPi - 6.0));
  CHECK(z.phi_d() == 0.2);
  CHECK(z.r() == 1.5);
}

TEST_CASE("defender_target_time examples") {
  CHECK(defender_target_time(0.0, 0.0) == 0.0);
  CHECK(defender_target_time(kHalfPi, 1.23) == doctest::Approx(kHalfPi).epsilon(1e-15));
  CHECK(defender_target_time(0.3 * kPi, 0.0) == doctest::Approx(0.9424778).epsilon(1e-7));
}

TEST_CASE("defender_target_time is the great-circle distance") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> phi(0.0, kHalfPi), th(-kPi, kPi);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double p = phi(gen), t = th(gen);
    worst = std::max(worst, std::abs(defender_target_time(p, t) - oracle::great_circle(p, t)));
    CHECK(defender_target_time(p, t) == defender_target_time(p, -t));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("defender_target_time is nondecreasing in |theta|") {
  for (double p : {0.0, 0.4, 1.2, kHalfPi}) {
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
      const double v = defender_target_time(p, kPi * i / 200.0);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("intruder_target_time examples") {
  CHECK(intruder_target_time(2.0, 0.0, 1.0) == doctest::Approx(1.0));
  CHECK(intruder_target_time(2.0, kPi / 3.0, 1.0) == doctest::Approx(std::sqrt(3.0)));
  CHECK(intruder_target_time(2.0, kPi / 3.0, 0.8) == doctest::Approx(2.1650635).epsilon(1e-7));
}

TEST_CASE("chord_from_approach examples and triangle consistency") {
  CHECK(chord_from_approach(2.0, 0.0) == doctest::Approx(std::sqrt(3.0)));
  CHECK(chord_from_approach(1.0, kHalfPi) == doctest::Approx(0.0));
  CHECK(chord_from_approach(2.0, std::acos(0.8)) == doctest::Approx(1.2330303).epsilon(1e-7));

  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> rr(1.0 + 1e-6, 5.0), bb(0.0, kHalfPi);
  for (int i = 0; i < 1000; ++i) {
    const double r = rr(gen), beta = bb(gen);
    const double x = chord_from_approach(r, beta);
    REQUIRE(x > 0.0);
    CHECK(std::abs(x * x + 1.0 + 2.0 * x * std::sin(beta) - r * r) <= 1e-12 * r * r);
    // Place B at azimuth 0 with the approach line at angle beta to the
    // tangent; the intruder's polar angle then gives the law-of-cosines chord.
    const double ax = 1.0 + x * std::sin(beta), ay = x * std::cos(beta);
    const double psi = std::atan2(ay, ax);
    CHECK(std::abs(intruder_target_time(r, -psi, 1.0) - x) <= 1e-12 * (1.0 + x));
  }
}

TEST_CASE("payoff examples") {
  const GameParams one(1.0), slow(0.8);
  CHECK(payoff(GameState(0.0, 0.0, 2.0), one, kPi / 3.0) ==
        doctest::Approx(kPi / 3.0 - std::sqrt(3.0)).epsilon(1e-12));
  CHECK(std::abs(payoff(GameState(0.0, kHalfPi, 1.0 + kHalfPi * 0.8), slow, 0.0)) <= 1e-15);
}

TEST_CASE("payoff matches the Cartesian reference and is continuous") {
  const GameState s(0.9, 0.3 * kPi, 2.0);
  const GameParams params(0.8);
  double prev = payoff(s, params, 0.9);
  const int n = 100000;
  const double step = std::acos(0.5) / n;
  for (int i = 1; i <= n; ++i) {
    const double t = 0.9 + step * i;
    const double v = payoff(s, params, t);
    CHECK(std::abs(v - oracle::payoff(0.9, 0.3 * kPi, 2.0, 0.8, t)) <= 1e-12);
    // dp/dtheta is bounded by 1 + r/nu.
    CHECK(std::abs(v - prev) <= (1.0 + 2.0 / 0.8) * step * 1.01);
    prev = v;
  }
}
