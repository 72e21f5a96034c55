#pragma once

#include <stdexcept>
#include <string>

namespace bso {

// Invalid argument value (negative time, wrong parameter range, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// State amplitudes supplied in the wrong frame.
struct FrameError : std::logic_error {
  using std::logic_error::logic_error;
};

// Integration step too large to resolve the counter-rotating term.
struct StepSizeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Bracketed root search failed.
struct SearchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Least-squares fit did not converge or is degenerate.
struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quadrature failed its self-consistency (node doubling) check.
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lock-in averaging window is not an integer number of periods.
struct WindowError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Run-configuration parse or validation failure; message carries the key path.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bso
