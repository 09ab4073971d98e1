#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ghbf {

// Base for every library error. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration, mismatched grids, unknown keys or catalog names.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Mathematical domain violations, e.g. nonpositive density under a logarithm.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An operation was called on input that violates its stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// q vanishes everywhere, so no pseudo-velocity can be defined.
class WholeFieldMaskedError : public Error {
 public:
  using Error::Error;
};

class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

// A Lagrangian marker entered the region where the pseudo-velocity is undefined.
class SurfaceInvalidatedError : public Error {
 public:
  SurfaceInvalidatedError(const std::string& what, std::size_t marker, double time)
      : Error(what), marker_(marker), time_(time) {}
  std::size_t marker() const { return marker_; }
  double time() const { return time_; }

 private:
  std::size_t marker_;
  double time_;
};

class SnapshotFormatError : public Error {
 public:
  using Error::Error;
};

class SnapshotTruncatedError : public SnapshotFormatError {
 public:
  SnapshotTruncatedError(const std::string& what, std::size_t offset)
      : SnapshotFormatError(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace ghbf
