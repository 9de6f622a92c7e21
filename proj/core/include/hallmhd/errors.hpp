#pragma once

#include <stdexcept>
#include <string>

namespace hallmhd {

/// Invalid configuration or malformed input file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or overflowing state detected during time stepping.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(double t, const std::string& detail)
      : std::runtime_error("blow-up or instability at t=" + std::to_string(t) + ": " + detail), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitValidation = 2,
  kExitInstability = 3,
  kExitInequalityFailure = 4,
};

}  // namespace hallmhd
