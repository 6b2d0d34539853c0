#include "hemiguard/strategies.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "hemiguard/errors.hpp"

namespace hemiguard {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t slot_of(double t) {
  return static_cast<std::uint64_t>(std::floor(std::max(t, 0.0) / kRandomHold + 1e-9));
}

BreachSolution breach_of(const StrategyContext& c, bool& corner) {
  if (c.breach) {
    corner = c.corner;
    return *c.breach;
  }
  return solve_with_corner(relative_state(c.defender, c.intruder), c.params, &corner);
}

std::uint64_t parse_stream(std::string_view text, std::string_view full) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw GameError(ErrorCode::InvalidArgument, "bad strategy name: " + std::string(full));
  }
  return v;
}

}  // namespace

double uniform_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t slot,
                    std::uint64_t index) {
  std::mt19937_64 gen(splitmix(splitmix(splitmix(seed) ^ stream) ^ slot));
  gen.discard(index);
  // 53 random mantissa bits; std::uniform_real_distribution is not
  // reproducible across standard libraries.
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

DefenderStrategy optimal_defender() {
  return {"optimal", [](const StrategyContext& c) {
            bool corner = false;
            const BreachSolution sol = breach_of(c, corner);
            return optimal_defender_control(c.defender, relative_state(c.defender, c.intruder),
                                            c.params, sol, corner, c.hold);
          }};
}

DefenderStrategy stationary_defender() {
  return {"stationary",
          [](const StrategyContext&) { return DefenderControl{0.0, 1, 0.0, std::nullopt}; }};
}

DefenderStrategy random_defender(std::uint64_t stream) {
  return {"random:" + std::to_string(stream), [stream](const StrategyContext& c) {
            const std::uint64_t slot = slot_of(c.t);
            const double w = 2.0 * uniform_draw(c.seed, 2 * stream, slot, 0) - 1.0;
            const int sign = uniform_draw(c.seed, 2 * stream, slot, 1) < 0.5 ? -1 : 1;
            return DefenderControl{w, sign, 1.0, std::nullopt};
          }};
}

IntruderStrategy optimal_intruder() {
  return {"optimal", [](const StrategyContext& c) {
            bool corner = false;
            return optimal_intruder_control(c.defender, c.intruder, breach_of(c, corner));
          }};
}

IntruderStrategy stationary_intruder() {
  return {"stationary", [](const StrategyContext&) { return IntruderControl{0.0, 0.0}; }};
}

IntruderStrategy fixed_heading_intruder(double gamma_a) {
  if (!std::isfinite(gamma_a)) throw GameError(ErrorCode::InvalidArgument, "heading must be finite");
  const double g = normalize_angle(gamma_a);
  char buf[64];
  std::snprintf(buf, sizeof buf, "fixed:%.9g", g);
  return {buf, [g](const StrategyContext&) { return IntruderControl{g, 1.0}; }};
}

IntruderStrategy random_intruder(std::uint64_t stream) {
  return {"random:" + std::to_string(stream), [stream](const StrategyContext& c) {
            const std::uint64_t slot = slot_of(c.t);
            const double g = normalize_angle(kPi * (1.0 - 2.0 * uniform_draw(c.seed, 2 * stream + 1, slot, 0)));
            const double f = uniform_draw(c.seed, 2 * stream + 1, slot, 1);
            return IntruderControl{g, f};
          }};
}

DefenderStrategy defender_strategy_from_name(std::string_view name) {
  if (name == "optimal") return optimal_defender();
  if (name == "stationary") return stationary_defender();
  if (name.starts_with("random:")) return random_defender(parse_stream(name.substr(7), name));
  throw GameError(ErrorCode::InvalidArgument, "unknown defender strategy: " + std::string(name));
}

IntruderStrategy intruder_strategy_from_name(std::string_view name) {
  if (name == "optimal") return optimal_intruder();
  if (name == "stationary") return stationary_intruder();
  if (name.starts_with("random:")) return random_intruder(parse_stream(name.substr(7), name));
  if (name.starts_with("fixed:")) {
    const std::string text(name.substr(6));
    char* end = nullptr;
    const double g = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
      throw GameError(ErrorCode::InvalidArgument, "bad strategy name: " + std::string(name));
    }
    return fixed_heading_intruder(g);
  }
  throw GameError(ErrorCode::InvalidArgument, "unknown intruder strategy: " + std::string(name));
}

}  // namespace hemiguard
