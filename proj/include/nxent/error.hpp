#pragma once

#include <stdexcept>
#include <string>

namespace nxent {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The phase grid does not cover the region the state occupies.
class GridError : public Error {
 public:
  GridError(const std::string& what, double required_extent)
      : Error(what), required_extent_(required_extent) {}
  double required_extent() const noexcept { return required_extent_; }

 private:
  double required_extent_;
};

/// Mass of w^alpha outside the grid is not negligible.
class TailError : public Error {
 public:
  TailError(const std::string& what, double suggested_extent)
      : Error(what), suggested_extent_(suggested_extent) {}
  double suggested_extent() const noexcept { return suggested_extent_; }

 private:
  double suggested_extent_;
};

/// Malformed input document (state, partition or run configuration).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace nxent
