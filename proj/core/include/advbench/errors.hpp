#pragma once

#include <stdexcept>
#include <string>

namespace advbench {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input bytes (netpbm, IDX, checkpoints, configs).
struct ParseError : Error {
  using Error::Error;
};

/// Argument outside its documented range, or inconsistent arguments.
struct ValueError : Error {
  using Error::Error;
};

/// Tensor shapes that were required to match do not.
struct ShapeError : Error {
  using Error::Error;
};

/// Filesystem failures (missing file, unwritable directory).
struct IoError : Error {
  using Error::Error;
};

}  // namespace advbench
