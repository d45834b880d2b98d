#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace yand {

enum class Errc {
  ZeroGradient,
  NotSymmetric,
  NotFactorized,
  DomainViolation,
  DegenerateTangentBlock,
  SingularHessian,
  EmptySlice,
  NoFiniteStep,
  NotDescent,
  MissingReference,
  UnknownProblem,
  SingularB,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

/// Exception type thrown by every operation in the library. The code is the
/// machine-readable part; what() carries context for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace yand
