#pragma once

#include <stdexcept>
#include <string>

namespace pprh {

/// Broad classification used by the CLI to pick an exit status.
enum class ErrorKind { Input, Computation };

class Error : public std::runtime_error {
 public:
  Error(std::string code, ErrorKind kind, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)), kind_(kind) {}

  const std::string& code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_; }

 private:
  std::string code_;
  ErrorKind kind_;
};

#define PPRH_DEFINE_ERROR(Name, Kind)                                          \
  class Name : public Error {                                                  \
   public:                                                                     \
    explicit Name(const std::string& what) : Error(#Name, Kind, what) {}       \
  };

// formdata
PPRH_DEFINE_ERROR(MalformedDocument, ErrorKind::Input)
PPRH_DEFINE_ERROR(InvariantViolation, ErrorKind::Input)
PPRH_DEFINE_ERROR(UnsupportedWeight, ErrorKind::Input)
PPRH_DEFINE_ERROR(MissingPrime, ErrorKind::Input)
PPRH_DEFINE_ERROR(AmbiguousSplitClass, ErrorKind::Input)

// specfun
PPRH_DEFINE_ERROR(PoleAtOne, ErrorKind::Computation)
PPRH_DEFINE_ERROR(DomainError, ErrorKind::Input)
PPRH_DEFINE_ERROR(QuadratureNonConvergence, ErrorKind::Computation)

// lfunc
PPRH_DEFINE_ERROR(InsufficientCoefficients, ErrorKind::Input)
PPRH_DEFINE_ERROR(KernelFailure, ErrorKind::Computation)

// periodpoly
PPRH_DEFINE_ERROR(MissingLambda, ErrorKind::Input)
PPRH_DEFINE_ERROR(ZeroTopLambda, ErrorKind::Computation)

// rootlab
PPRH_DEFINE_ERROR(NonConvergence, ErrorKind::Computation)
PPRH_DEFINE_ERROR(DegenerateLeading, ErrorKind::Input)

// perturb
PPRH_DEFINE_ERROR(DegenerateAtOne, ErrorKind::Computation)
PPRH_DEFINE_ERROR(NonMonotoneBoundary, ErrorKind::Computation)

#undef PPRH_DEFINE_ERROR

}  // namespace pprh
