#pragma once

#include <stdexcept>
#include <string>

namespace hermvp {

enum class ErrorKind {
  Overflow,
  InsufficientQuadrature,
  BasisMismatch,
  UnsupportedBasis,
  UnsupportedOrder,
  SingularUpdate,
  NonConvergence,
  ConfigParse,
  Validation,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a category so drivers can map
/// it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace hermvp
