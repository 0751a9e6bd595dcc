#pragma once

#include <stdexcept>
#include <string>

namespace dirac1d {

enum class ErrorKind {
  InvalidArgument,
  SpectrumHit,        // spectral parameter on the continuous spectrum
  DomainTooSmall,
  DegenerateInput,
  BlowUp,
  WindowOutsideTrajectory,
  InsufficientDecay,
  WindingUnresolved,
  ZeroNearContour,
  Io,
  Config,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dirac1d
