#pragma once

#include <stdexcept>
#include <string>

namespace cuspann {

// All library errors carry a "module: message" string.
class Error : public std::runtime_error {
 public:
  Error(const std::string& module, const std::string& msg)
      : std::runtime_error(module + ": " + msg), module_(module) {}
  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

class DomainError : public Error {
  using Error::Error;
};

class PrecisionError : public Error {
  using Error::Error;
};

class SingularSeed : public Error {
  using Error::Error;
};

class RamifiedPlace : public Error {
  using Error::Error;
};

class ConventionMismatch : public Error {
  using Error::Error;
};

class UnreducibleRamification : public Error {
  using Error::Error;
};

class NonPolynomialL : public Error {
  using Error::Error;
};

class ScaleError : public Error {
  using Error::Error;
};

class InconsistentCounts : public Error {
  using Error::Error;
};

}  // namespace cuspann
