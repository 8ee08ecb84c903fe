#pragma once

#include <stdexcept>
#include <string>

namespace stationary {

enum class ErrorKind {
  dimension,
  syntax,
  unknown_function,
  non_integer_exponent,
  division_by_zero,
  evaluation,
  quadrature,
  not_spacelike,
  precondition,
  codimension,
  degenerate,
  gauss_map_collision,
  branch_tracking,
  io,
  config,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::syntax: return "syntax";
    case ErrorKind::unknown_function: return "unknown function";
    case ErrorKind::non_integer_exponent: return "non-integer exponent";
    case ErrorKind::division_by_zero: return "division by zero";
    case ErrorKind::evaluation: return "evaluation";
    case ErrorKind::quadrature: return "quadrature";
    case ErrorKind::not_spacelike: return "not spacelike";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::codimension: return "codimension";
    case ErrorKind::degenerate: return "degenerate (case ii)";
    case ErrorKind::gauss_map_collision: return "Gauss map collision";
    case ErrorKind::branch_tracking: return "branch tracking";
    case ErrorKind::io: return "io";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

/// Single exception type for the library; `kind()` tells callers (and the CLI
/// exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Numeric failures (as opposed to bad input) map to exit status 3.
  bool is_numeric() const noexcept {
    switch (kind_) {
      case ErrorKind::division_by_zero:
      case ErrorKind::evaluation:
      case ErrorKind::quadrature:
      case ErrorKind::not_spacelike:
      case ErrorKind::gauss_map_collision:
      case ErrorKind::branch_tracking:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorKind kind_;
};

}  // namespace stationary
