#pragma once

#include <stdexcept>
#include <string>

namespace transgauss {

// Base of every error raised by the library. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Gram-Schmidt pivot collapsed below tolerance.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class IllConditionedError : public Error {
 public:
  IllConditionedError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ImmersionError : public Error {
 public:
  using Error::Error;
};

class InconclusiveDegreeError : public Error {
 public:
  InconclusiveDegreeError(const std::string& what, double raw)
      : Error(what), raw_(raw) {}
  double raw() const noexcept { return raw_; }

 private:
  double raw_;
};

// A preimage landed too close to the critical set; pick another regular value.
class NearCriticalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace transgauss
