#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hemiguard {

enum class ErrorCode {
  InvalidArgument,
  NoBracket,
  DegenerateApproach,
  SingularCurvature,
  LevelSetInsidePerimeter,
  PoleSingularity,
  AmbiguousTerminal,
};

/// Stable machine-readable name, used in CLI error records.
std::string_view to_string(ErrorCode code) noexcept;

class GameError : public std::runtime_error {
 public:
  GameError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hemiguard
