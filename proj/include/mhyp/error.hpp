#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mhyp {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Syntax error while reading textual input.  `offset` is the byte offset of
/// the offending token within the parsed text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Semantic validation failure: arity mismatch, unknown symbol, invalid
/// position, coloration domain mismatch, monoid membership violation, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An enumeration exceeded its configured size cap.
class CapError : public Error {
 public:
  using Error::Error;
};

}  // namespace mhyp
