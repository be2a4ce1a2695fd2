#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace covering {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coordinate, axis or parameter outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// An input larger than a configured cap or enumeration budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Mismatched orders/shapes or an otherwise malformed argument.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A theorem hypothesis that the input does not satisfy. Carries the
/// covering number that was computed while checking it.
class HypothesisNotMet : public Error {
 public:
  HypothesisNotMet(const std::string& what, std::int64_t computed, std::int64_t required)
      : Error(what), computed_(computed), required_(required) {}

  std::int64_t computed() const noexcept { return computed_; }
  std::int64_t required() const noexcept { return required_; }

 private:
  std::int64_t computed_;
  std::int64_t required_;
};

/// Malformed instance/family/tensor file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace covering
