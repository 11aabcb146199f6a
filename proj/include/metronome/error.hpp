#pragma once

#include <stdexcept>
#include <string>

namespace metronome {

/// Base of every error raised by the library. Callers that only need to
/// distinguish bad input from failed I/O catch Error and IoError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace metronome
