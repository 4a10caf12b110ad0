#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace caustic {

/// Base class for every failure raised by the simulation library. `code()`
/// is a stable identifier used in the CLI's machine-readable error line.
class SimulationError : public std::runtime_error {
public:
  SimulationError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

#define CAUSTIC_DEFINE_ERROR(Name)                                            \
  class Name : public SimulationError {                                       \
  public:                                                                     \
    explicit Name(const std::string& what) : SimulationError(#Name, what) {}  \
  };

CAUSTIC_DEFINE_ERROR(ValidationError)
CAUSTIC_DEFINE_ERROR(GridMismatch)
CAUSTIC_DEFINE_ERROR(BlowUp)
CAUSTIC_DEFINE_ERROR(BoundaryLeak)
CAUSTIC_DEFINE_ERROR(AtCaustic)
CAUSTIC_DEFINE_ERROR(TooCloseToFocus)
CAUSTIC_DEFINE_ERROR(UnsupportedDimension)
CAUSTIC_DEFINE_ERROR(HypothesisViolated)
CAUSTIC_DEFINE_ERROR(InsufficientResolution)
CAUSTIC_DEFINE_ERROR(MassDrift)

#undef CAUSTIC_DEFINE_ERROR

}  // namespace caustic
