#pragma once

#include <stdexcept>
#include <string>

namespace senslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two group elements (or an element and a system) of different kinds met.
class KindMismatch : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A generating set failed the desk-scale generation check.
class NotGenerating : public Error {
 public:
  using Error::Error;
};

/// The search window for a norm evaluation is too small for the target.
class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

/// A finite search (orbit cycle, ball enumeration) hit its cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace senslab
