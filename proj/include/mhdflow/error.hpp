#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mhdflow {

enum class ErrorCode {
  InvalidArgument,
  NotRepresentable,
  DegenerateSystem,
  PoleNear,
  NoSignChange,
  ComplexDecay,
  RequiresNonzeroM,
  NoPhysicalRoot,
  NoConvergence,
  Blowup,
  StepUnderflow,
  BadBracket,
};

std::string_view to_string(ErrorCode code);

// Every failure the library reports carries one of the codes above so that
// callers (the CLI in particular) can print a stable status token.
class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mhdflow
