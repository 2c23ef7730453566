//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_ERROR_H_
#define ASEMOL_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asemol {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor shapes that cannot be combined by an operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// A precondition of an operation was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string &message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Malformed tabular input or configuration file.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Checkpoint content fails length, shape, or checksum validation.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class UnsupportedVersionError : public Error {
 public:
  using Error::Error;
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace asemol

#endif  // ASEMOL_ERROR_H_
