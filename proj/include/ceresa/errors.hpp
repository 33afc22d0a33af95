#pragma once

#include <stdexcept>
#include <string>

namespace ceresa {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (N = 0, negative norm, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A norm/coset pair that violates m = Q(mu) mod 1.
class CongruenceError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Enumeration would exceed a configured bound.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Network or server failure; callers may retry or fall back.
class TransientError : public Error {
 public:
  using Error::Error;
};

/// No cached, fixture or online data for a level.
class DataUnavailable : public Error {
 public:
  using Error::Error;
};

/// Malformed newform payload. `index` is the offending record, or -1 for
/// a document-level problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long index)
      : Error(what), index_(index) {}
  long index() const noexcept { return index_; }

 private:
  long index_;
};

}  // namespace ceresa
