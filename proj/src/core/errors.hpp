#pragma once

#include <stdexcept>
#include <string>

namespace specband {

enum class ErrorKind {
  InvalidArgument,
  Parse,
  InvalidMatrix,
  InvalidData,
  InvalidMeasure,
  NonConvergence,
  OracleOverflow,
  InfeasibleBranch,
  Breakdown,
  VerificationFailed,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so the C
// layer can map it onto a status code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace specband
