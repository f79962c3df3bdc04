#pragma once

#include <stdexcept>
#include <string>

namespace stegaug {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments or violated preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed file content; messages carry the byte offset where known.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Filesystem or stream failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace stegaug
