#pragma once

#include <stdexcept>
#include <string>

namespace flist {

enum class ErrorKind {
  Config,
  Io,
  Decay,
  IllConditioned,
  DerivativeUnavailable,
  SpectralSingularity,
  InsufficientRange,
  WindingMismatch,
  MultipleZero,
  PoleHit,
  ContourProximity,
  SingularSystem,
  WrongSolitonCount,
  OriginSingularity,
  DegenerateCone,
  GammaOverflow,
  OutsideCone,
  InsufficientSamples,
  BlowUp,
  StabilityViolation,
};

const char* error_name(ErrorKind kind);

// Numeric and configuration failures raised by every module.  The kind
// maps one-to-one onto the C API status codes.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  const char* name() const noexcept { return error_name(kind_); }

private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace flist
