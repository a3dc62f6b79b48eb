#pragma once

#include <stdexcept>
#include <string>

namespace ctorsion {

// Process exit codes shared by every CLI subcommand.
enum class ExitCode : int {
  ok = 0,
  validation = 2,
  no_root = 3,
  nonconvergence = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

// Bad input: violated precondition, malformed file, out-of-range parameter.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ExitCode::validation, what) {}
};

// A bracketed root search found no sign change in the requested range.
class NoRootError : public Error {
 public:
  explicit NoRootError(const std::string& what) : Error(ExitCode::no_root, what) {}
};

// Integration or extrapolation did not reach the requested accuracy.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(ExitCode::nonconvergence, what) {}
};

}  // namespace ctorsion
