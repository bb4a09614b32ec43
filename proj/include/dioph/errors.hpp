#pragma once

#include <stdexcept>

namespace dioph {

/// Raised when an internal guard trips (scan ceiling, bracketing failure,
/// broken stream invariant). Maps to exit code 3 in the CLI.
class diagnostic_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dioph
