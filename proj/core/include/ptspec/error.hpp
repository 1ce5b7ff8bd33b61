#pragma once

#include <stdexcept>
#include <string>

namespace ptspec {

/// Base class for every failure reported by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration detected before any computation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace ptspec
