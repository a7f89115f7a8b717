#pragma once

#include <stdexcept>
#include <string>

namespace kmx {

enum class ErrorKind {
  NotGCM,
  NotSymmetrizable,
  NotSpecial,
  PreconditionViolated,
  InternalInfeasible,
  ZeroTorusValue,
  RankMismatch,
  NotAFace,
  NotInMonoid,
  NotDominant,
  NotFactored,
  DepthTooLarge,
  DepthExceeded,
  ResourceGuard,
  Parse,
};

const char* kind_name(ErrorKind k);

/// Domain errors carry a kind so the CLI can map them to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  ErrorKind kind() const { return kind_; }
  /// Resource guards (exit 3) as opposed to ordinary domain errors (exit 1).
  bool is_guard() const {
    return kind_ == ErrorKind::DepthTooLarge || kind_ == ErrorKind::DepthExceeded ||
           kind_ == ErrorKind::ResourceGuard;
  }

 private:
  ErrorKind kind_;
};

/// Thrown for DepthExceeded; records the depth that would have been needed.
class DepthError : public Error {
 public:
  DepthError(int required, const std::string& msg)
      : Error(ErrorKind::DepthExceeded, msg), required_(required) {}
  int required() const { return required_; }

 private:
  int required_;
};

}  // namespace kmx
