#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace efield {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Fields or grids that do not line up.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class OutOfBounds : public Error {
 public:
  OutOfBounds(const std::string& what, std::size_t index) : Error(what), index_(index) {}
  // Position of the offending record in the input sequence.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Non-finite values appeared during time stepping.
class BlowUp : public Error {
 public:
  BlowUp(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class CflViolation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace efield
