#pragma once

#include <stdexcept>
#include <string>

namespace cvrob {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

// Fock cutoff too small for the requested state.
struct TruncationError : Error {
  using Error::Error;
};

// Pure state leaves the range of the ansatz.
struct SupportError : Error {
  using Error::Error;
};

struct CertificationFailure : Error {
  using Error::Error;
};

struct Unconverged : Error {
  using Error::Error;
};

struct InconsistencyError : Error {
  using Error::Error;
};

struct DegenerateInput : Error {
  using Error::Error;
};

struct Unsupported : Error {
  using Error::Error;
};

struct InternalError : Error {
  using Error::Error;
};

}  // namespace cvrob
